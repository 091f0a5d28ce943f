// Copyright 2026 The DOGMa Fusion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dogma/error.hpp"
#include "dogma/grid.hpp"
#include "dogma/grid_io.hpp"
#include "dogma/latency.hpp"
#include "dogma/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace dogma;

namespace
{

ErrorCode code_of(auto && fn)
{
  try {
    fn();
  } catch (const Error & e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

TrafficArea make_area(const std::string & id, const Pose & origin, double w, double h)
{
  TrafficArea a;
  a.id = id;
  a.origin = origin;
  a.width = w;
  a.height = h;
  return a;
}

// Distinct, valid masses per cell so copies can be traced.
void fill_pattern(Dogma & g)
{
  for (int r = 0; r < g.size(); ++r) {
    for (int c = 0; c < g.size(); ++c) {
      const double o = ((r * 7 + c * 3) % 11) / 20.0;
      const double f = ((r * 5 + c) % 9) / 20.0;
      g.at(r, c).mass = {o, f};
      g.at(r, c).v_east = r;
      g.at(r, c).v_north = c;
    }
  }
}

}  // namespace

TEST_CASE("cell centers")
{
  const Dogma unit(4, 1.0, Pose(0, 0), GridKind::Collective);
  CHECK(unit.cell_center(0, 0).x() == doctest::Approx(0.5));
  CHECK(unit.cell_center(0, 0).y() == doctest::Approx(0.5));

  // Local grid of two cells: cell (1,1) sits at local (0.5, 0.5) from the center.
  const Dogma rotated(2, 1.0, Pose(0, 0, std::numbers::pi / 2), GridKind::Local);
  CHECK(rotated.cell_center(1, 1).x() == doctest::Approx(-0.5));
  CHECK(rotated.cell_center(1, 1).y() == doctest::Approx(0.5));

  const Dogma shifted(10, 0.15, Pose(10, 20), GridKind::Collective);
  CHECK(shifted.cell_center(0, 0).x() == doctest::Approx(10.075));
  CHECK(shifted.cell_center(0, 0).y() == doctest::Approx(20.075));

  CHECK(code_of([&] { unit.cell_center(4, 0); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { unit.cell_center(0, -1); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("cell_center and index_of round trip")
{
  const Dogma g(37, 0.15, Pose(3.0, -4.0, 0.4), GridKind::Local);
  for (int r = 0; r < g.size(); ++r) {
    for (int c = 0; c < g.size(); ++c) {
      const auto idx = g.index_of(g.cell_center(r, c));
      REQUIRE(idx.has_value());
      CHECK(*idx == CellIndex{r, c});
    }
  }
  CHECK_FALSE(g.index_of({100.0, 100.0}).has_value());
}

TEST_CASE("grid construction rules")
{
  CHECK(code_of([] { Dogma(0, 1.0, Pose(), GridKind::Local); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { Dogma(4, 0.0, Pose(), GridKind::Local); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { Dogma(4, 1.0, Pose(0, 0, 0.1), GridKind::Collective); }) ==
        ErrorCode::ConfigError);
}

TEST_CASE("collective initialization")
{
  TrafficArea big = make_area("big", Pose(0, 0), 150.0, 150.0);
  const Dogma & g = init_collective(big, 0.15);
  CHECK(g.size() == 1000);
  CHECK(g.kind() == GridKind::Collective);
  const GridMetrics m = grid_metrics(g);
  CHECK(m.mean_entropy == 1.0);
  CHECK(m.mean_non_specificity == 1.0);
  CHECK(m.mean_free == 0.0);
  CHECK(g.at(500, 500).var_north == doctest::Approx(9.81 * 9.81));
  CHECK(code_of([&] { init_collective(big, 0.15); }) == ErrorCode::AlreadyInitialized);

  TrafficArea small = make_area("small", Pose(-10, -22), 30.0, 30.0);
  CHECK(init_collective(small, 0.15).size() == 200);

  TrafficArea ragged = make_area("ragged", Pose(0, 0), 10.0, 10.05);
  CHECK(code_of([&] { init_collective(ragged, 0.15); }) == ErrorCode::ConfigError);
}

TEST_CASE("grid and area overlap")
{
  TrafficArea area = make_area("a", Pose(0, 0), 30.0, 30.0);
  CHECK(overlap(area, Dogma(10, 1.0, Pose(5, 5), GridKind::Local)));
  CHECK_FALSE(overlap(area, Dogma(10, 1.0, Pose(35, 5), GridKind::Local)));
  // touching edge only
  CHECK_FALSE(overlap(area, Dogma(10, 1.0, Pose(35, 5, 0.0), GridKind::Local)));
  const Dogma a(10, 1.0, Pose(0, 0), GridKind::Local);
  const Dogma b(10, 1.0, Pose(10, 0), GridKind::Local);
  CHECK_FALSE(overlap(a, b));
  CHECK(overlap(a, Dogma(10, 1.0, Pose(9.9, 0), GridKind::Local)));
}

TEST_CASE("extraction: aligned copy")
{
  Dogma coll(20, 0.5, Pose(0, 0), GridKind::Collective);
  fill_pattern(coll);
  // 6x6 local grid centered on a cell corner so centers coincide.
  const Dogma sub = extract_submap(coll, Pose(5.0, 4.0), 6, 0.5);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      CHECK(sub.at(r, c).mass == coll.at(r + 5, c + 7).mass);
      CHECK(sub.at(r, c).v_east == coll.at(r + 5, c + 7).v_east);
    }
  }
}

TEST_CASE("extraction: half outside is unknown")
{
  Dogma coll(20, 0.5, Pose(0, 0), GridKind::Collective);
  fill_pattern(coll);
  const Dogma sub = extract_submap(coll, Pose(0.0, 5.0), 8, 0.5);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(sub.at(r, c).mass == kUnknown);
    }
    for (int c = 4; c < 8; ++c) {
      CHECK(sub.at(r, c).mass == coll.at(r + 6, c - 4).mass);
    }
  }
  CHECK(code_of([&] { extract_submap(coll, Pose(-50, -50), 8, 0.5); }) == ErrorCode::NoOverlap);
}

TEST_CASE("extraction: rotated target matches point-in-cell lookup")
{
  Dogma coll(40, 0.25, Pose(-5, -5), GridKind::Collective);
  fill_pattern(coll);
  const double yaw = std::numbers::pi / 6;
  const Pose target(0.3, -0.2, yaw);
  const int d = 30;
  const double c = 0.2;
  const Dogma sub = extract_submap(coll, target, d, c);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      // Center in the target frame, rotated and shifted by hand.
      const double lx = (k + 0.5) * c - 0.5 * d * c;
      const double ly = (r + 0.5) * c - 0.5 * d * c;
      const double wx = target.x + std::cos(yaw) * lx - std::sin(yaw) * ly;
      const double wy = target.y + std::sin(yaw) * lx + std::cos(yaw) * ly;
      const int cc = static_cast<int>(std::floor((wx + 5.0) / 0.25));
      const int cr = static_cast<int>(std::floor((wy + 5.0) / 0.25));
      if (cr >= 0 && cr < 40 && cc >= 0 && cc < 40) {
        CHECK(sub.at(r, k).mass == coll.at(cr, cc).mass);
      } else {
        CHECK(sub.at(r, k).mass == kUnknown);
      }
    }
  }
}

TEST_CASE("snapshot round trip")
{
  Dogma g(5, 0.15, Pose(1.5, -2.25, 0.5), GridKind::Local, "veh", 12.5);
  fill_pattern(g);
  g.at(0, 0).v_north = -0.0;
  std::stringstream ss;
  write_dogma(ss, g);
  const std::string text = ss.str();
  CHECK(text.rfind("DOGMA1 5 0.15 1.5 -2.25 0.5 12.5 local veh\n", 0) == 0);
  CHECK(text.find("-0 ") == std::string::npos);
  const Dogma back = read_dogma(ss);
  CHECK(back.size() == 5);
  CHECK(back.source_id() == "veh");
  CHECK(back.timestamp() == 12.5);
  CHECK(compare_grids(g, back).max == 0.0);
  std::stringstream again;
  write_dogma(again, back);
  CHECK(again.str() == text);

  std::istringstream bad("DOGMA1 2 1 0 0 0 0 local -\n0.9 0.9 0 0 0 0 0\n");
  CHECK(code_of([&] { read_dogma(bad); }) == ErrorCode::ParseError);
  std::istringstream junk("hello\n");
  CHECK(code_of([&] { read_dogma(junk); }) == ErrorCode::ParseError);
}

TEST_CASE("graymap export")
{
  Dogma g(2, 1.0, Pose(0, 0), GridKind::Collective);
  g.at(0, 0).mass = {1.0, 0.0};
  g.at(1, 1).mass = {0.0, 0.5};
  std::stringstream occ;
  write_pgm(occ, g, Channel::Occupied);
  CHECK(occ.str() == "P2\n2 2\n255\n0 0\n255 0\n");
  std::stringstream fr;
  write_pgm(fr, g, Channel::Free);
  CHECK(fr.str() == "P2\n2 2\n255\n0 128\n0 0\n");
}

TEST_CASE("latency window")
{
  LatencyTracker t;
  CHECK(t.observe(0.010, 0.012) == doctest::Approx(0.002));
  CHECK(t.observe(0.020, 0.024) == doctest::Approx(0.003));
  LatencyTracker one;
  CHECK(one.observe(0.0, 0.050) == doctest::Approx(0.050));
  LatencyTracker two(2);
  two.observe(0.0, 1.0);
  two.observe(0.0, 2.0);
  CHECK(two.observe(0.0, 4.0) == doctest::Approx(3.0));
  CHECK(two.size() == 2);
  CHECK(code_of([&] { two.observe(1.0, 0.5); }) == ErrorCode::NegativeLatency);
  CHECK(code_of([] { LatencyTracker(0); }) == ErrorCode::ConfigError);
}
