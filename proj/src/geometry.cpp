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

#include "dogma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dogma
{

double normalize_angle(double angle) noexcept
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a <= -std::numbers::pi) {
    a += two_pi;
  } else if (a > std::numbers::pi) {
    a -= two_pi;
  }
  return a;
}

Vec2 Pose::to_world(const Vec2 & local) const
{
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return {x + c * local.x() - s * local.y(), y + s * local.x() + c * local.y()};
}

Vec2 Pose::to_local(const Vec2 & world) const
{
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  const double dx = world.x() - x;
  const double dy = world.y() - y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

Quad OrientedRect::corners() const
{
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  return {
    center.to_world({-hl, -hw}), center.to_world({hl, -hw}), center.to_world({hl, hw}),
    center.to_world({-hl, hw})};
}

bool OrientedRect::contains(const Vec2 & p) const
{
  const Vec2 l = center.to_local(p);
  return std::abs(l.x()) <= 0.5 * length && std::abs(l.y()) <= 0.5 * width;
}

namespace
{

// True if the projections of a and b onto the normals of `edges_of` leave a gap.
bool separated_along_edges(const Quad & edges_of, const Quad & a, const Quad & b, double tol)
{
  for (std::size_t i = 0; i < edges_of.size(); ++i) {
    const Vec2 edge = edges_of[(i + 1) % edges_of.size()] - edges_of[i];
    const double len = edge.norm();
    if (len == 0.0) {
      continue;
    }
    const Vec2 axis{-edge.y() / len, edge.x() / len};
    double a_min = std::numeric_limits<double>::infinity();
    double a_max = -a_min;
    double b_min = a_min;
    double b_max = -a_min;
    for (const auto & p : a) {
      const double d = axis.dot(p);
      a_min = std::min(a_min, d);
      a_max = std::max(a_max, d);
    }
    for (const auto & p : b) {
      const double d = axis.dot(p);
      b_min = std::min(b_min, d);
      b_max = std::max(b_max, d);
    }
    if (std::min(a_max, b_max) - std::max(a_min, b_min) <= tol) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool overlap(const Quad & a, const Quad & b, double tolerance)
{
  if (quad_area(a) <= 0.0 || quad_area(b) <= 0.0) {
    return false;
  }
  return !separated_along_edges(a, a, b, tolerance) && !separated_along_edges(b, a, b, tolerance);
}

double quad_area(const Quad & q)
{
  double twice = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Vec2 & p = q[i];
    const Vec2 & n = q[(i + 1) % q.size()];
    twice += p.x() * n.y() - n.x() * p.y();
  }
  return 0.5 * std::abs(twice);
}

std::optional<std::array<double, 2>> ray_clip(
  const Vec2 & origin, const Vec2 & direction, const OrientedRect & rect, double max_range)
{
  // Slab test in the rectangle's frame.
  const Vec2 o = rect.center.to_local(origin);
  const double c = std::cos(rect.center.yaw);
  const double s = std::sin(rect.center.yaw);
  const Vec2 d{c * direction.x() + s * direction.y(), -s * direction.x() + c * direction.y()};
  const std::array<double, 2> half{0.5 * rect.length, 0.5 * rect.width};

  double t_enter = 0.0;
  double t_exit = max_range;
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(d[axis]) < 1e-15) {
      if (std::abs(o[axis]) > half[axis]) {
        return std::nullopt;
      }
      continue;
    }
    double t0 = (-half[axis] - o[axis]) / d[axis];
    double t1 = (half[axis] - o[axis]) / d[axis];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
    if (t_enter > t_exit) {
      return std::nullopt;
    }
  }
  return std::array<double, 2>{t_enter, t_exit};
}

std::optional<double> ray_intersect(
  const Vec2 & origin, const Vec2 & direction, const OrientedRect & rect, double max_range)
{
  auto span = ray_clip(origin, direction, rect, max_range);
  if (!span) {
    return std::nullopt;
  }
  if ((*span)[0] > 0.0) {
    return (*span)[0];
  }
  // Origin inside: the first boundary crossing is the exit.
  return (*span)[1] < max_range ? std::optional<double>((*span)[1]) : std::nullopt;
}

}  // namespace dogma
