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

#ifndef DOGMA__GRID_HPP_
#define DOGMA__GRID_HPP_

#include "dogma/evidence.hpp"
#include "dogma/geometry.hpp"
#include "dogma/latency.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dogma
{

/// Prior velocity variance for cells without evidence: one second of a_max = 9.81 m/s^2.
inline constexpr double kDefaultPriorVelocityVariance = 9.81 * 9.81;

/// Velocity variance floor for self-reported and ground-truth velocities.
inline constexpr double kVelocityVarianceFloor = 1e-4;

/// One DOGMa cell: evidential masses plus north/east velocity and its covariance.
struct CellState
{
  BeliefMass mass;
  double v_north{0.0};
  double v_east{0.0};
  double var_north{kDefaultPriorVelocityVariance};
  double var_east{kDefaultPriorVelocityVariance};
  double cov_north_east{0.0};

  static CellState unknown(double prior_variance = kDefaultPriorVelocityVariance)
  {
    CellState c;
    c.var_north = prior_variance;
    c.var_east = prior_variance;
    return c;
  }

  bool valid_covariance(double tolerance = 1e-12) const
  {
    return var_north >= 0.0 && var_east >= 0.0 &&
           cov_north_east * cov_north_east <= var_north * var_east + tolerance;
  }
};

enum class GridKind { Local, Collective };

const char * to_string(GridKind kind);

struct CellIndex
{
  int row{0};
  int col{0};
  friend bool operator==(const CellIndex &, const CellIndex &) = default;
};

/// Square georeferenced grid of cells, stored row-major.
///
/// Rows run along the grid's local y axis and columns along its local x axis.
/// The pose of a collective grid is its south-west corner (yaw 0); the pose of
/// a local grid is its center, oriented with the vehicle.
class Dogma
{
public:
  Dogma() = default;
  Dogma(
    int size, double cell_size, const Pose & pose, GridKind kind, std::string source_id = {},
    double timestamp = 0.0, const CellState & fill = CellState::unknown());

  int size() const noexcept { return size_; }
  double cell_size() const noexcept { return cell_size_; }
  double extent() const noexcept { return size_ * cell_size_; }
  const Pose & pose() const noexcept { return pose_; }
  GridKind kind() const noexcept { return kind_; }
  const std::string & source_id() const noexcept { return source_id_; }
  double timestamp() const noexcept { return timestamp_; }
  void set_timestamp(double ts) noexcept { timestamp_ = ts; }
  void set_source_id(std::string id) { source_id_ = std::move(id); }

  CellState & at(int row, int col) { return cells_[index(row, col)]; }
  const CellState & at(int row, int col) const { return cells_[index(row, col)]; }
  CellState & operator[](std::size_t i) { return cells_[i]; }
  const CellState & operator[](std::size_t i) const { return cells_[i]; }
  std::vector<CellState> & cells() noexcept { return cells_; }
  const std::vector<CellState> & cells() const noexcept { return cells_; }

  bool in_range(int row, int col) const noexcept
  {
    return row >= 0 && col >= 0 && row < size_ && col < size_;
  }

  /// Pose of the grid's (row 0, col 0) corner, carrying the grid yaw.
  const Pose & corner() const noexcept { return corner_; }

  /// World coordinates of a cell center. Throws IndexOutOfRange.
  Vec2 cell_center(int row, int col) const;

  /// World point expressed in grid-local metric coordinates relative to the corner.
  Vec2 to_grid(const Vec2 & world) const { return corner_.to_local(world); }

  /// Cell containing a world point, if inside the grid.
  std::optional<CellIndex> index_of(const Vec2 & world) const;

  /// World-frame boundary of the grid.
  Quad footprint() const;

private:
  std::size_t index(int row, int col) const;

  int size_{0};
  double cell_size_{0.0};
  Pose pose_;
  Pose corner_;
  GridKind kind_{GridKind::Local};
  std::string source_id_;
  double timestamp_{0.0};
  std::vector<CellState> cells_;
};

/// Fixed world-aligned rectangle that may own one collective grid.
struct TrafficArea
{
  std::string id;
  Pose origin;  // south-west corner, yaw 0
  double width{0.0};
  double height{0.0};
  std::optional<Dogma> collective;
  LatencyTracker latency;
  double last_overlap_time{0.0};

  Quad footprint() const;
};

bool overlap(const Dogma & a, const Dogma & b);
bool overlap(const TrafficArea & area, const Dogma & grid);

/// Creates the all-unknown collective grid tiling `area`. Throws AlreadyInitialized or ConfigError.
const Dogma & init_collective(
  TrafficArea & area, double cell_size, double prior_variance = kDefaultPriorVelocityVariance);

/// Nearest-cell resampling of `collective` onto a vehicle-centered local grid.
/// Throws NoOverlap when no target cell center falls inside the collective grid.
Dogma extract_submap(
  const Dogma & collective, const Pose & target_pose, int size, double cell_size,
  double prior_variance = kDefaultPriorVelocityVariance);

}  // namespace dogma

#endif  // DOGMA__GRID_HPP_
