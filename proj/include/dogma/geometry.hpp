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

#ifndef DOGMA__GEOMETRY_HPP_
#define DOGMA__GEOMETRY_HPP_

#include <Eigen/Core>

#include <array>
#include <optional>

// Planar world frame: x points east, y points north, yaw is measured
// counter-clockwise from east.

namespace dogma
{

using Vec2 = Eigen::Vector2d;

double normalize_angle(double angle) noexcept;

struct Pose
{
  double x{0.0};
  double y{0.0};
  double yaw{0.0};

  Pose() = default;
  Pose(double x_, double y_, double yaw_ = 0.0) : x(x_), y(y_), yaw(normalize_angle(yaw_)) {}

  Vec2 position() const { return {x, y}; }
  /// Maps a point from this pose's frame into the world frame.
  Vec2 to_world(const Vec2 & local) const;
  /// Maps a world point into this pose's frame.
  Vec2 to_local(const Vec2 & world) const;
};

/// Convex quadrilateral, corners in counter-clockwise order.
using Quad = std::array<Vec2, 4>;

/// Rectangle of `length` along the pose heading and `width` across it, centered on the pose.
struct OrientedRect
{
  Pose center;
  double length{0.0};
  double width{0.0};

  Quad corners() const;
  bool contains(const Vec2 & p) const;
};

/// Separating-axis test; touching edges or corners do not count as overlap.
bool overlap(const Quad & a, const Quad & b, double tolerance = 1e-9);

double quad_area(const Quad & q);

/// Distance along a ray to the first boundary crossing of `rect`, if within [0, max_range].
/// A ray starting inside the rectangle reports its exit distance.
std::optional<double> ray_intersect(
  const Vec2 & origin, const Vec2 & direction, const OrientedRect & rect, double max_range);

/// Parameter interval [t_enter, t_exit] where the ray lies inside `rect`, clipped to [0, max_range].
std::optional<std::array<double, 2>> ray_clip(
  const Vec2 & origin, const Vec2 & direction, const OrientedRect & rect, double max_range);

}  // namespace dogma

#endif  // DOGMA__GEOMETRY_HPP_
