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

#include "dogma/metrics.hpp"

#include "dogma/error.hpp"
#include "dogma/evidence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace dogma
{

const char * const kMetricsHeader =
  "step,virtual_time,mean_H_local,mean_H_fused,mean_NS_local,mean_NS_fused,"
  "mean_mF_local,mean_mF_fused,mean_conflict_K";

GridMetrics grid_metrics(const Dogma & grid)
{
  double h = 0.0;
  double ns = 0.0;
  double mf = 0.0;
  for (const auto & cell : grid.cells()) {
    h += shannon_entropy(cell.mass);
    ns += non_specificity(cell.mass);
    mf += cell.mass.free;
  }
  const double n = static_cast<double>(grid.cells().size());
  return {h / n, ns / n, mf / n};
}

namespace
{

void put(std::ostream & out, double v)
{
  if (v == 0.0) {
    v = 0.0;  // drop the sign of negative zero
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out << buf;
}

}  // namespace

void write_metrics_csv(std::ostream & out, const std::vector<MetricsRow> & rows)
{
  out << kMetricsHeader << '\n';
  for (const auto & r : rows) {
    out << r.step;
    for (double v :
         {r.virtual_time, r.mean_H_local, r.mean_H_fused, r.mean_NS_local, r.mean_NS_fused,
          r.mean_mF_local, r.mean_mF_fused, r.mean_conflict_K}) {
      out << ',';
      put(out, v);
    }
    out << '\n';
  }
}

std::vector<MetricsRow> read_metrics_csv(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw Error(ErrorCode::ParseError, "metrics csv: missing or unexpected header");
  }
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    std::array<double, 8> v{};
    MetricsRow r;
    if (!std::getline(ls, tok, ',')) {
      throw Error(ErrorCode::ParseError, "metrics csv: empty row");
    }
    try {
      r.step = std::stoi(tok);
      for (auto & x : v) {
        if (!std::getline(ls, tok, ',')) {
          throw Error(ErrorCode::ParseError, "metrics csv: short row");
        }
        x = std::stod(tok);
      }
    } catch (const std::logic_error &) {
      throw Error(ErrorCode::ParseError, "metrics csv: bad number in '" + line + "'");
    }
    if (std::getline(ls, tok, ',')) {
      throw Error(ErrorCode::ParseError, "metrics csv: long row");
    }
    r.virtual_time = v[0];
    r.mean_H_local = v[1];
    r.mean_H_fused = v[2];
    r.mean_NS_local = v[3];
    r.mean_NS_fused = v[4];
    r.mean_mF_local = v[5];
    r.mean_mF_fused = v[6];
    r.mean_conflict_K = v[7];
    rows.push_back(r);
  }
  return rows;
}

GridDifference compare_grids(const Dogma & a, const Dogma & b)
{
  const Pose & pa = a.pose();
  const Pose & pb = b.pose();
  if (
    a.size() != b.size() || a.cell_size() != b.cell_size() || pa.x != pb.x || pa.y != pb.y ||
    pa.yaw != pb.yaw) {
    throw Error(ErrorCode::GeometryMismatch, "grids differ in geometry");
  }
  GridDifference d;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    const double dO = std::abs(a[i].mass.occupied - b[i].mass.occupied);
    const double dF = std::abs(a[i].mass.free - b[i].mass.free);
    d.max = std::max({d.max, dO, dF});
    sum += dO + dF;
  }
  d.mean = sum / static_cast<double>(a.cells().size());
  return d;
}

}  // namespace dogma
