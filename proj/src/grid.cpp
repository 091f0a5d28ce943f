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

#include "dogma/grid.hpp"

#include "dogma/error.hpp"

#include <cmath>
#include <string>

namespace dogma
{

const char * to_string(GridKind kind)
{
  return kind == GridKind::Local ? "local" : "collective";
}

Dogma::Dogma(
  int size, double cell_size, const Pose & pose, GridKind kind, std::string source_id,
  double timestamp, const CellState & fill)
: size_(size),
  cell_size_(cell_size),
  pose_(pose),
  kind_(kind),
  source_id_(std::move(source_id)),
  timestamp_(timestamp)
{
  if (size_ <= 0 || !(cell_size_ > 0.0)) {
    throw Error(ErrorCode::ConfigError, "grid needs positive size and cell side length");
  }
  if (kind_ == GridKind::Collective && pose_.yaw != 0.0) {
    throw Error(ErrorCode::ConfigError, "collective grids are world-axis aligned");
  }
  if (kind_ == GridKind::Collective) {
    corner_ = pose_;
  } else {
    const double half = 0.5 * extent();
    const Vec2 c = pose_.to_world({-half, -half});
    corner_ = Pose(c.x(), c.y(), pose_.yaw);
  }
  cells_.assign(static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_), fill);
}

std::size_t Dogma::index(int row, int col) const
{
  if (!in_range(row, col)) {
    throw Error(
      ErrorCode::IndexOutOfRange,
      "(" + std::to_string(row) + "," + std::to_string(col) + ") outside " +
        std::to_string(size_) + "x" + std::to_string(size_));
  }
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(size_) +
         static_cast<std::size_t>(col);
}

Vec2 Dogma::cell_center(int row, int col) const
{
  if (!in_range(row, col)) {
    index(row, col);  // throws
  }
  return corner_.to_world({(col + 0.5) * cell_size_, (row + 0.5) * cell_size_});
}

std::optional<CellIndex> Dogma::index_of(const Vec2 & world) const
{
  const Vec2 g = to_grid(world);
  const double col = std::floor(g.x() / cell_size_);
  const double row = std::floor(g.y() / cell_size_);
  if (col < 0.0 || row < 0.0 || col >= size_ || row >= size_) {
    return std::nullopt;
  }
  return CellIndex{static_cast<int>(row), static_cast<int>(col)};
}

Quad Dogma::footprint() const
{
  const double e = extent();
  return {corner_.to_world({0.0, 0.0}), corner_.to_world({e, 0.0}), corner_.to_world({e, e}),
          corner_.to_world({0.0, e})};
}

Quad TrafficArea::footprint() const
{
  return {origin.to_world({0.0, 0.0}), origin.to_world({width, 0.0}),
          origin.to_world({width, height}), origin.to_world({0.0, height})};
}

bool overlap(const Dogma & a, const Dogma & b) { return overlap(a.footprint(), b.footprint()); }

bool overlap(const TrafficArea & area, const Dogma & grid)
{
  return overlap(area.footprint(), grid.footprint());
}

const Dogma & init_collective(TrafficArea & area, double cell_size, double prior_variance)
{
  if (area.collective) {
    throw Error(ErrorCode::AlreadyInitialized, "traffic area '" + area.id + "'");
  }
  if (!(area.width > 0.0) || !(area.height > 0.0) || !(cell_size > 0.0)) {
    throw Error(ErrorCode::ConfigError, "traffic area and cell size must be positive");
  }
  const double cells = area.width / cell_size;
  const double rounded = std::round(cells);
  if (std::abs(area.width - area.height) > 1e-9 || std::abs(cells - rounded) > 1e-6) {
    throw Error(
      ErrorCode::ConfigError, "traffic area must be square and tiled exactly by the cell size");
  }
  area.collective.emplace(
    static_cast<int>(rounded), cell_size, Pose(area.origin.x, area.origin.y, 0.0),
    GridKind::Collective, area.id, 0.0, CellState::unknown(prior_variance));
  return *area.collective;
}

Dogma extract_submap(
  const Dogma & collective, const Pose & target_pose, int size, double cell_size,
  double prior_variance)
{
  Dogma out(
    size, cell_size, target_pose, GridKind::Local, collective.source_id(), collective.timestamp(),
    CellState::unknown(prior_variance));
  std::size_t covered = 0;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      if (auto idx = collective.index_of(out.cell_center(r, c))) {
        out.at(r, c) = collective.at(idx->row, idx->col);
        ++covered;
      }
    }
  }
  if (covered == 0) {
    throw Error(ErrorCode::NoOverlap, "target grid lies outside the collective grid");
  }
  return out;
}

}  // namespace dogma
