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

#ifndef DOGMA__SIMWORLD_HPP_
#define DOGMA__SIMWORLD_HPP_

#include "dogma/grid.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace dogma
{

enum class ObjectClass : std::uint8_t { RoadSurface, Vehicle, Obstacle };

const char * to_string(ObjectClass cls);

/// Rectangular world object. Roads are static; vehicles move in a straight
/// line with `velocity` until they have covered `stop_after` meters.
struct WorldObject
{
  int id{0};
  ObjectClass cls{ObjectClass::Obstacle};
  OrientedRect shape;
  Vec2 velocity{Vec2::Zero()};  // (east, north)
  bool connected{false};
  double stop_after{std::numeric_limits<double>::infinity()};

  /// Object state at time t (shape moved, velocity zero once stopped).
  WorldObject at(double t) const;
};

struct World
{
  std::vector<WorldObject> objects;

  World at(double t) const;
  const WorldObject * find(int id) const;
};

struct LidarHit
{
  float range{0.0F};
  float azimuth{0.0F};  // relative to the sensor heading
  ObjectClass cls{ObjectClass::RoadSurface};
  std::int32_t object_id{-1};
};

struct LidarConfig
{
  int beams{3600};
  double max_range{50.0};
  /// Spacing of ground returns along the visible part of each beam.
  double ground_step{0.05};
  /// Ground returns are only generated up to this range (silhouettes use max_range).
  double ground_range{std::numeric_limits<double>::infinity()};
};

/// Planar 360-degree scan of a world snapshot. Each beam reports the nearest
/// vehicle or obstacle silhouette (skipping `exclude_id`) plus ground returns
/// on road surface along the unobstructed part of the beam.
std::vector<LidarHit> raycast(
  const World & world, const Pose & sensor, const LidarConfig & cfg, int exclude_id = -1);

Vec2 hit_point(const Pose & sensor, const LidarHit & hit);

/// Ground-truth local grid from labeled hits and the object list. Hits are
/// sensor-relative and the sensor sits at the grid center, so the grid is
/// declared at `grid_pose` (the vehicle's believed pose; it differs from the
/// true pose only when simulating localization errors). The ego footprint is
/// stamped as occupied with the ego velocity.
Dogma ground_truth_dogma(
  const std::vector<LidarHit> & hits, const World & world, const WorldObject & ego,
  const Pose & grid_pose, int grid_size, double cell_size, double timestamp,
  const std::string & source_id);

/// Seeded one-way link with Gaussian latency jitter and per-sender FIFO delivery.
class NetLink
{
public:
  NetLink(double base_latency, double jitter_std, std::uint64_t seed);

  /// Arrival time of a message sent at `send_ts`.
  double deliver(double send_ts);

  double base_latency() const noexcept { return base_latency_; }
  double jitter_std() const noexcept { return jitter_std_; }

private:
  double base_latency_;
  double jitter_std_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_{0.0, 1.0};
  double last_arrival_{-std::numeric_limits<double>::infinity()};
};

}  // namespace dogma

#endif  // DOGMA__SIMWORLD_HPP_
