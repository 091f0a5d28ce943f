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

#ifndef DOGMA__FUSION_HPP_
#define DOGMA__FUSION_HPP_

#include "dogma/dynamics.hpp"
#include "dogma/grid.hpp"

#include <map>
#include <string>
#include <vector>

namespace dogma
{

struct FusionConfig
{
  /// Half-life of the exponential decay of evidence toward ignorance, seconds.
  double decay_half_life{2.0};
  std::size_t latency_window{20};
  NoiseConfig noise;
  SpreadMode mode{SpreadMode::Integrate};
  /// Local grids older than the collective by more than this are dropped.
  double reorder_tolerance{0.1};
  /// Kalman velocity fusion runs only where both sides exceed this occupied mass.
  double velocity_gate{0.1};

  void validate() const;
};

/// Factor 2^(-dt / half_life) applied to evidence over an interval dt.
double decay_factor(double dt, double half_life);

struct PredictionStats
{
  std::size_t sources{0};
  double occupied_before{0.0};
  double occupied_deposited{0.0};
};

/// Moves the grid forward by dt in place. Occupied mass is transported with the
/// constant-velocity model and spread by the predicted position covariance;
/// free mass stays put. Both then decay toward ignorance.
PredictionStats predict_grid(Dogma & grid, double dt, const FusionConfig & cfg);

enum class IngestStatus { Fused, NoOverlap, OutOfOrder };

const char * to_string(IngestStatus status);

struct IngestReport
{
  IngestStatus status{IngestStatus::NoOverlap};
  bool initialized{false};
  double dt{0.0};
  double mean_conflict{0.0};
  std::size_t cells_fused{0};
  std::size_t cells_conflict{0};
};

/// Predicts the area's collective grid to the local grid's timestamp and fuses
/// the local grid into it, creating the collective grid on first overlap.
IngestReport ingest_local(TrafficArea & area, const Dogma & local, const FusionConfig & cfg);

/// Drops the collective grid once no local grid has overlapped the area for `grace` seconds.
void remove_collective(TrafficArea & area, double now, double grace);

/// Marks every cell whose center lies inside `footprint` as certainly occupied
/// and moving with `velocity` (east, north).
Dogma stamp_self_report(Dogma grid, const OrientedRect & footprint, const Vec2 & velocity);

struct VehicleRecord
{
  Pose pose;
  double length{0.0};
  double width{0.0};
  double timestamp{0.0};
  int grid_size{0};
  double grid_cell_size{0.0};
  bool has_pose{false};
};

/// Sub-map for a vehicle at its latest self-reported pose, predicted forward by
/// the elapsed time since the collective's timestamp plus the latency estimate.
/// Throws NotInitialized or NoPose.
Dogma produce_submap(
  const TrafficArea & area, const std::string & vehicle_id, const VehicleRecord & vehicle,
  const FusionConfig & cfg, double now);

/// Cloud-side fusion node: vehicle registry, traffic areas and the diagnostics log.
class FusionNode
{
public:
  explicit FusionNode(FusionConfig cfg);

  TrafficArea & add_area(const std::string & id, const Pose & origin, double width, double height);
  TrafficArea & area(const std::string & id);
  const TrafficArea & area(const std::string & id) const;

  /// Throws StaleReport when older than the stored report; the stored report is kept.
  void report_pose(
    const std::string & vehicle_id, const Pose & pose, double length, double width,
    double timestamp);

  bool has_vehicle(const std::string & vehicle_id) const;
  const VehicleRecord & vehicle(const std::string & vehicle_id) const;

  /// Records latency, routes the grid to the first overlapping area and fuses it.
  IngestReport receive(const Dogma & local, double arrival_ts);

  Dogma produce_submap(const std::string & area_id, const std::string & vehicle_id, double now) const;

  /// Applies remove_collective to all areas.
  void expire(double now, double grace);

  const FusionConfig & config() const noexcept { return cfg_; }
  /// One line per receive(): ts area vehicle dt mean_K cells_fused cells_conflict latency_est
  const std::vector<std::string> & diagnostics() const noexcept { return log_; }

private:
  FusionConfig cfg_;
  std::map<std::string, TrafficArea> areas_;
  std::map<std::string, VehicleRecord> vehicles_;
  std::vector<std::string> log_;
};

}  // namespace dogma

#endif  // DOGMA__FUSION_HPP_
