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

#include "dogma/simworld.hpp"

#include "dogma/error.hpp"
#include "dogma/fusion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace dogma
{

const char * to_string(ObjectClass cls)
{
  switch (cls) {
    case ObjectClass::RoadSurface:
      return "road_surface";
    case ObjectClass::Vehicle:
      return "vehicle";
    case ObjectClass::Obstacle:
      return "obstacle";
  }
  return "unknown";
}

WorldObject WorldObject::at(double t) const
{
  WorldObject out = *this;
  const double speed = velocity.norm();
  if (cls == ObjectClass::RoadSurface || speed == 0.0 || t <= 0.0) {
    if (cls == ObjectClass::RoadSurface) {
      out.velocity = Vec2::Zero();
    }
    return out;
  }
  double travel = speed * t;
  if (travel >= stop_after) {
    travel = stop_after;
    out.velocity = Vec2::Zero();
  }
  const Vec2 shift = velocity / speed * travel;
  out.shape.center = Pose(shape.center.x + shift.x(), shape.center.y + shift.y(), shape.center.yaw);
  return out;
}

World World::at(double t) const
{
  World out;
  out.objects.reserve(objects.size());
  for (const auto & o : objects) {
    out.objects.push_back(o.at(t));
  }
  return out;
}

const WorldObject * World::find(int id) const
{
  for (const auto & o : objects) {
    if (o.id == id) {
      return &o;
    }
  }
  return nullptr;
}

std::vector<LidarHit> raycast(
  const World & world, const Pose & sensor, const LidarConfig & cfg, int exclude_id)
{
  if (cfg.beams <= 0 || !(cfg.max_range > 0.0) || !(cfg.ground_step > 0.0)) {
    throw Error(ErrorCode::ConfigError, "lidar needs beams, range and ground step > 0");
  }
  std::vector<LidarHit> hits;
  const Vec2 origin = sensor.position();
  std::vector<std::array<double, 2>> spans;

  for (int i = 0; i < cfg.beams; ++i) {
    const double az = 2.0 * std::numbers::pi * i / cfg.beams;
    const double heading = sensor.yaw + az;
    const Vec2 dir{std::cos(heading), std::sin(heading)};

    double nearest = cfg.max_range;
    const WorldObject * target = nullptr;
    for (const auto & o : world.objects) {
      if (o.cls == ObjectClass::RoadSurface || o.id == exclude_id) {
        continue;
      }
      const auto t = ray_intersect(origin, dir, o.shape, cfg.max_range);
      if (t && *t < nearest) {
        nearest = *t;
        target = &o;
      }
    }

    // Road intervals on the visible part of the beam, merged.
    spans.clear();
    for (const auto & o : world.objects) {
      if (o.cls != ObjectClass::RoadSurface) {
        continue;
      }
      if (auto s = ray_clip(origin, dir, o.shape, nearest)) {
        spans.push_back(*s);
      }
    }
    std::sort(spans.begin(), spans.end());
    const double end = std::min(target ? nearest : cfg.max_range, cfg.ground_range);
    std::size_t k = 0;
    for (int step = 0;; ++step) {
      const double r = step * cfg.ground_step;
      if (r >= end) {
        break;
      }
      while (k < spans.size() && spans[k][1] < r) {
        ++k;
      }
      bool on_road = false;
      for (std::size_t j = k; j < spans.size() && spans[j][0] <= r; ++j) {
        if (r <= spans[j][1]) {
          on_road = true;
          break;
        }
      }
      if (on_road) {
        hits.push_back(
          {static_cast<float>(r), static_cast<float>(az), ObjectClass::RoadSurface, -1});
      }
    }
    if (target) {
      hits.push_back(
        {static_cast<float>(nearest), static_cast<float>(az), target->cls,
         static_cast<std::int32_t>(target->id)});
    }
  }
  return hits;
}

Vec2 hit_point(const Pose & sensor, const LidarHit & hit)
{
  const double a = static_cast<double>(hit.azimuth);
  const double r = static_cast<double>(hit.range);
  return sensor.to_world({r * std::cos(a), r * std::sin(a)});
}

Dogma ground_truth_dogma(
  const std::vector<LidarHit> & hits, const World & world, const WorldObject & ego,
  const Pose & grid_pose, int grid_size, double cell_size, double timestamp,
  const std::string & source_id)
{
  Dogma grid(
    grid_size, cell_size, grid_pose, GridKind::Local, source_id, timestamp, CellState::unknown());
  const Pose origin(0.0, 0.0, 0.0);
  const double half = 0.5 * grid.extent();

  // Non-road hits overwrite road hits, so bin road first.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto & h : hits) {
      const bool road = h.cls == ObjectClass::RoadSurface;
      if (road != (pass == 0)) {
        continue;
      }
      const Vec2 p = hit_point(origin, h);
      const int col = static_cast<int>(std::floor((p.x() + half) / cell_size));
      const int row = static_cast<int>(std::floor((p.y() + half) / cell_size));
      if (!grid.in_range(row, col)) {
        continue;
      }
      CellState & cell = grid.at(row, col);
      if (road) {
        if (cell.mass.occupied == 0.0) {
          cell.mass = {0.0, 1.0};
        }
        continue;
      }
      Vec2 v = Vec2::Zero();
      if (const WorldObject * o = world.find(h.object_id)) {
        v = o->velocity;
      }
      cell.mass = {1.0, 0.0};
      cell.v_east = v.x();
      cell.v_north = v.y();
      cell.var_east = kVelocityVarianceFloor;
      cell.var_north = kVelocityVarianceFloor;
      cell.cov_north_east = 0.0;
    }
  }

  // The grid shares the vehicle heading, so the ego footprint sits on the grid pose.
  const OrientedRect footprint{grid_pose, ego.shape.length, ego.shape.width};
  return stamp_self_report(std::move(grid), footprint, ego.velocity);
}

NetLink::NetLink(double base_latency, double jitter_std, std::uint64_t seed)
: base_latency_(base_latency), jitter_std_(jitter_std), rng_(seed)
{
  if (base_latency < 0.0 || jitter_std < 0.0) {
    throw Error(ErrorCode::ConfigError, "latency and jitter must be non-negative");
  }
}

double NetLink::deliver(double send_ts)
{
  double latency = base_latency_;
  if (jitter_std_ > 0.0) {
    latency += jitter_std_ * noise_(rng_);
  }
  latency = std::max(latency, 0.0);
  const double arrival = std::max(send_ts + latency, last_arrival_);
  last_arrival_ = arrival;
  return arrival;
}

}  // namespace dogma
