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

#include "dogma/scenario.hpp"

#include "dogma/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>

namespace dogma
{

namespace
{

constexpr int kRoadMain = 100;
constexpr int kRoadSide = 101;
constexpr int kBuilding = 200;

using Field = std::variant<double *, int *, std::uint64_t *, SpreadMode *>;

std::map<std::string, Field> fields(ScenarioConfig & c)
{
  return {
    {"seed", &c.seed},
    {"steps", &c.steps},
    {"period", &c.period},
    {"v2_emit_offset", &c.v2_emit_offset},
    {"base_latency", &c.base_latency},
    {"jitter_std", &c.jitter_std},
    {"cell_size", &c.cell_size},
    {"local_size", &c.local_size},
    {"area_origin_x", &c.area_origin_x},
    {"area_origin_y", &c.area_origin_y},
    {"area_size", &c.area_size},
    {"beams", &c.beams},
    {"max_range", &c.max_range},
    {"ground_step", &c.ground_step},
    {"road_width", &c.road_width},
    {"main_road_length", &c.main_road_length},
    {"side_road_length", &c.side_road_length},
    {"building_x0", &c.building_x0},
    {"building_x1", &c.building_x1},
    {"building_y0", &c.building_y0},
    {"building_y1", &c.building_y1},
    {"vehicle_length", &c.vehicle_length},
    {"vehicle_width", &c.vehicle_width},
    {"v1_x", &c.v1_x},
    {"v1_y", &c.v1_y},
    {"v1_speed", &c.v1_speed},
    {"v1_stop_after", &c.v1_stop_after},
    {"v2_y", &c.v2_y},
    {"v2_speed", &c.v2_speed},
    {"v2_initial_overlap", &c.v2_initial_overlap},
    {"v3_x", &c.v3_x},
    {"v3_y", &c.v3_y},
    {"v3_speed", &c.v3_speed},
    {"v2_pose_error_x", &c.v2_pose_error_x},
    {"v2_pose_error_y", &c.v2_pose_error_y},
    {"decay_half_life", &c.decay_half_life},
    {"mode", &c.mode},
  };
}

std::string trim(const std::string & s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string & key, const std::string & text)
{
  T value{};
  const char * end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ConfigError, "bad value for " + key + ": '" + text + "'");
  }
  return value;
}

void assign(const std::string & key, const Field & field, const std::string & text)
{
  std::visit(
    [&](auto * p) {
      using T = std::remove_pointer_t<decltype(p)>;
      if constexpr (std::is_same_v<T, SpreadMode>) {
        if (text == "integrate") {
          *p = SpreadMode::Integrate;
        } else if (text == "center") {
          *p = SpreadMode::CenterApprox;
        } else {
          throw Error(ErrorCode::ConfigError, "mode must be integrate or center");
        }
      } else {
        *p = parse_number<T>(key, text);
      }
    },
    field);
}

void require(bool ok, const char * what)
{
  if (!ok) {
    throw Error(ErrorCode::ConfigError, what);
  }
}

OrientedRect box(double x0, double x1, double y0, double y1)
{
  return {Pose(0.5 * (x0 + x1), 0.5 * (y0 + y1)), x1 - x0, y1 - y0};
}

}  // namespace

void ScenarioConfig::validate() const
{
  require(steps > 0, "steps must be positive");
  require(period > 0.0, "period must be positive");
  require(v2_emit_offset >= 0.0 && v2_emit_offset < period, "v2_emit_offset must lie in [0, period)");
  require(base_latency >= 0.0 && jitter_std >= 0.0, "latency and jitter must be non-negative");
  require(cell_size > 0.0 && local_size > 0, "grid geometry must be positive");
  const double tiles = area_size / cell_size;
  require(
    area_size > 0.0 && std::abs(tiles - std::round(tiles)) < 1e-6,
    "area_size must be a multiple of cell_size");
  require(beams > 0 && max_range > 0.0 && ground_step > 0.0, "lidar parameters must be positive");
  require(road_width > 0.0 && main_road_length > 0.0 && side_road_length > 0.0, "bad road geometry");
  require(building_x1 > building_x0 && building_y1 > building_y0, "bad building geometry");
  require(vehicle_length > 0.0 && vehicle_width > 0.0, "vehicle dimensions must be positive");
  require(
    v1_speed >= 0.0 && v2_speed >= 0.0 && v3_speed >= 0.0 && v1_stop_after >= 0.0,
    "speeds and stop distance must be non-negative");
  require(
    v2_initial_overlap > 0.0 && v2_initial_overlap < local_size * cell_size,
    "v2_initial_overlap must lie in (0, local extent)");
  require(decay_half_life > 0.0, "decay_half_life must be positive");
}

FusionConfig ScenarioConfig::fusion() const
{
  FusionConfig f;
  f.decay_half_life = decay_half_life;
  f.noise.cell_size = cell_size;
  f.mode = mode;
  return f;
}

ScenarioConfig parse_scenario_config(std::istream & in)
{
  ScenarioConfig cfg;
  auto table = fields(cfg);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto it = table.find(key);
    if (it == table.end()) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": unknown key " + key);
    }
    assign(key, it->second, trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ConfigError, "cannot open config " + path.string());
  }
  return parse_scenario_config(in);
}

void write_scenario_config(std::ostream & out, const ScenarioConfig & cfg)
{
  ScenarioConfig copy = cfg;
  for (const auto & [key, field] : fields(copy)) {
    out << key << " = ";
    std::visit(
      [&](auto * p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SpreadMode>) {
          out << (*p == SpreadMode::Integrate ? "integrate" : "center");
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[32];
          auto r = std::to_chars(buf, buf + sizeof(buf), *p);
          out.write(buf, r.ptr - buf);
        } else {
          out << *p;
        }
      },
      field);
    out << '\n';
  }
}

LidarConfig Scenario::lidar() const
{
  LidarConfig l;
  l.beams = cfg.beams;
  l.max_range = cfg.max_range;
  l.ground_step = cfg.ground_step;
  // Nothing beyond the local grid's corners can be binned.
  l.ground_range = 0.5 * std::sqrt(2.0) * cfg.local_size * cfg.cell_size + cfg.cell_size;
  return l;
}

Pose Scenario::true_pose(std::size_t vehicle, double t) const
{
  const WorldObject * o = world.find(connected.at(vehicle).object_id);
  return o->at(t).shape.center;
}

Pose Scenario::reported_pose(std::size_t vehicle, double t) const
{
  const Pose p = true_pose(vehicle, t);
  const Vec2 & err = connected.at(vehicle).pose_error;
  return Pose(p.x + err.x(), p.y + err.y(), p.yaw);
}

Dogma Scenario::render(const Emission & e) const
{
  const ConnectedVehicle & v = connected.at(e.vehicle);
  const World snap = world.at(e.created);
  const WorldObject & ego = *snap.find(v.object_id);
  const auto hits = raycast(snap, ego.shape.center, lidar(), v.object_id);
  return ground_truth_dogma(
    hits, snap, ego, reported_pose(e.vehicle, e.created), cfg.local_size, cfg.cell_size, e.created,
    v.name);
}

Scenario build_t_junction_scenario(const ScenarioConfig & cfg)
{
  cfg.validate();
  Scenario s;
  s.cfg = cfg;
  const double hw = 0.5 * cfg.road_width;
  const double extent = cfg.local_size * cfg.cell_size;
  const double pi = std::numbers::pi;

  auto & objs = s.world.objects;
  objs.push_back(
    {kRoadMain, ObjectClass::RoadSurface,
     box(-0.5 * cfg.main_road_length, 0.5 * cfg.main_road_length, -hw, hw)});
  objs.push_back(
    {kRoadSide, ObjectClass::RoadSurface, box(-hw, hw, -hw - cfg.side_road_length, -hw)});
  objs.push_back(
    {kBuilding, ObjectClass::Obstacle,
     box(cfg.building_x0, cfg.building_x1, cfg.building_y0, cfg.building_y1)});

  const double v2_x = cfg.v1_x + extent - cfg.v2_initial_overlap;
  WorldObject v1{
    1, ObjectClass::Vehicle,
    {Pose(cfg.v1_x, cfg.v1_y, 0.5 * pi), cfg.vehicle_length, cfg.vehicle_width},
    {0.0, cfg.v1_speed}, true, cfg.v1_stop_after};
  WorldObject v2{
    2, ObjectClass::Vehicle, {Pose(v2_x, cfg.v2_y, pi), cfg.vehicle_length, cfg.vehicle_width},
    {-cfg.v2_speed, 0.0}, true};
  WorldObject v3{
    3, ObjectClass::Vehicle, {Pose(cfg.v3_x, cfg.v3_y, pi), cfg.vehicle_length, cfg.vehicle_width},
    {-cfg.v3_speed, 0.0}, false};

  const Quad bq = objs.back().shape.corners();
  for (const auto * v : {&v1, &v2, &v3}) {
    require(!overlap(v->shape.corners(), bq), "a vehicle starts inside the building");
  }
  require(!overlap(v1.shape.corners(), v2.shape.corners()), "vehicles 1 and 2 collide at start");
  require(!overlap(v2.shape.corners(), v3.shape.corners()), "vehicles 2 and 3 collide at start");
  objs.push_back(v1);
  objs.push_back(v2);
  objs.push_back(v3);

  s.connected.push_back({"1", 1, 0.0, Vec2::Zero()});
  s.connected.push_back(
    {"2", 2, cfg.v2_emit_offset, Vec2(cfg.v2_pose_error_x, cfg.v2_pose_error_y)});

  // The scenario clock starts at the first overlap of the two local grids.
  const Dogma g1(cfg.local_size, cfg.cell_size, s.true_pose(0, 0.0), GridKind::Local);
  const Dogma g2(cfg.local_size, cfg.cell_size, s.true_pose(1, 0.0), GridKind::Local);
  require(overlap(g1, g2), "local grids do not overlap at t = 0");

  for (std::size_t i = 0; i < s.connected.size(); ++i) {
    NetLink link(cfg.base_latency, cfg.jitter_std, cfg.seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    for (int k = 0; k < cfg.steps; ++k) {
      const double created = s.connected[i].emit_offset + k * cfg.period;
      s.schedule.push_back({i, k, created, link.deliver(created)});
    }
  }
  std::stable_sort(s.schedule.begin(), s.schedule.end(), [](const Emission & a, const Emission & b) {
    if (a.arrival != b.arrival) {
      return a.arrival < b.arrival;
    }
    if (a.created != b.created) {
      return a.created < b.created;
    }
    return a.vehicle < b.vehicle;
  });
  return s;
}

}  // namespace dogma
