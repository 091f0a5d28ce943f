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

#ifndef DOGMA__SCENARIO_HPP_
#define DOGMA__SCENARIO_HPP_

#include "dogma/fusion.hpp"
#include "dogma/simworld.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dogma
{

/// T-junction scenario parameters. World frame: x east, y north. The main road
/// runs east-west through the origin; the side road joins it from the south.
struct ScenarioConfig
{
  std::uint64_t seed{42};
  int steps{60};
  double period{0.1};
  double v2_emit_offset{0.05};
  double base_latency{0.05};
  double jitter_std{0.005};

  double cell_size{0.15};
  int local_size{134};
  double area_origin_x{-10.0};
  double area_origin_y{-22.0};
  double area_size{30.0};

  int beams{3600};
  double max_range{50.0};
  double ground_step{0.05};

  double road_width{7.0};
  double main_road_length{200.0};
  double side_road_length{60.0};
  // Building in the south-east corner of the junction.
  double building_x0{5.0};
  double building_x1{30.0};
  double building_y0{-30.0};
  double building_y1{-5.0};

  double vehicle_length{4.5};
  double vehicle_width{1.8};
  double v1_x{1.75};
  double v1_y{-9.5};
  double v1_speed{5.0};
  double v1_stop_after{0.5};
  double v2_y{1.75};
  double v2_speed{8.0};
  /// Overlap width of the two local grids along x at t = 0; fixes vehicle 2's start.
  double v2_initial_overlap{0.05};
  double v3_x{48.0};
  double v3_y{1.75};
  double v3_speed{2.0};

  /// Pose error added to vehicle 2's declared grid and self-report.
  double v2_pose_error_x{0.0};
  double v2_pose_error_y{0.0};

  double decay_half_life{60.0};
  SpreadMode mode{SpreadMode::Integrate};

  void validate() const;
  FusionConfig fusion() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and bad
/// values throw ConfigError.
ScenarioConfig parse_scenario_config(std::istream & in);
ScenarioConfig load_scenario_config(const std::filesystem::path & path);
void write_scenario_config(std::ostream & out, const ScenarioConfig & cfg);

struct ConnectedVehicle
{
  std::string name;
  int object_id{0};
  double emit_offset{0.0};
  Vec2 pose_error{Vec2::Zero()};
};

struct Emission
{
  std::size_t vehicle{0};  // index into Scenario::connected
  int seq{0};
  double created{0.0};
  double arrival{0.0};
};

struct Scenario
{
  ScenarioConfig cfg;
  World world;
  std::vector<ConnectedVehicle> connected;
  /// Sorted by arrival, then creation time, then vehicle.
  std::vector<Emission> schedule;

  LidarConfig lidar() const;
  /// True pose of a connected vehicle at time t.
  Pose true_pose(std::size_t vehicle, double t) const;
  /// Pose the vehicle believes it has (true pose plus configured error).
  Pose reported_pose(std::size_t vehicle, double t) const;
  /// Ground-truth local grid of an emission, declared at the reported pose.
  Dogma render(const Emission & e) const;
};

/// Vehicle 1 (connected) approaches the junction from the south, vehicle 2
/// (connected) crosses westbound, vehicle 3 (unconnected) follows slowly. The
/// clock starts when the two local grids first overlap.
Scenario build_t_junction_scenario(const ScenarioConfig & cfg);

}  // namespace dogma

#endif  // DOGMA__SCENARIO_HPP_
