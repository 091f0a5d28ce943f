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

#include "dogma/fusion.hpp"

#include "dogma/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dogma
{

void FusionConfig::validate() const
{
  if (!(decay_half_life > 0.0)) {
    throw Error(ErrorCode::ConfigError, "decay half-life must be positive");
  }
  if (latency_window < 1) {
    throw Error(ErrorCode::ConfigError, "latency window must hold at least one sample");
  }
  if (!(reorder_tolerance >= 0.0)) {
    throw Error(ErrorCode::ConfigError, "reorder tolerance must be non-negative");
  }
  noise.validate();
}

double decay_factor(double dt, double half_life) { return std::exp2(-dt / half_life); }

const char * to_string(IngestStatus status)
{
  switch (status) {
    case IngestStatus::Fused: return "fused";
    case IngestStatus::NoOverlap: return "no_overlap";
    case IngestStatus::OutOfOrder: return "out_of_order";
  }
  return "unknown";
}

PredictionStats predict_grid(Dogma & grid, double dt, const FusionConfig & cfg)
{
  PredictionStats stats;
  if (!(dt > 0.0)) {
    return stats;
  }
  const double factor = decay_factor(dt, cfg.decay_half_life);
  const Mat4 q = process_noise(cfg.noise, dt);
  const int d = grid.size();
  const std::size_t n = grid.cells().size();

  // Mixture moments of the transported occupied mass per target cell.
  std::vector<double> mass(n, 0.0);
  std::vector<Eigen::Vector2d> momentum(n, Eigen::Vector2d::Zero());
  std::vector<Mat2> second(n, Mat2::Zero());

  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const CellState & cell = grid.at(r, c);
      const double m = cell.mass.occupied;
      if (!(m > 0.0)) {
        continue;
      }
      ++stats.sources;
      stats.occupied_before += m;
      const KalmanCell k = predict(kalman_from_cell(cell, grid.cell_center(r, c)), dt, q);
      const Eigen::Vector2d v = k.state.tail<2>();
      const Mat2 raw = k.covariance.block<2, 2>(2, 2) + v * v.transpose();
      const auto spread =
        spread_weights(grid, k.state.head<2>(), k.covariance.block<2, 2>(0, 0), cfg.mode);
      for (const auto & cw : spread.weights) {
        const std::size_t i =
          static_cast<std::size_t>(cw.index.row) * static_cast<std::size_t>(d) +
          static_cast<std::size_t>(cw.index.col);
        const double a = m * cw.weight;
        mass[i] += a;
        momentum[i] += a * v;
        second[i] += a * raw;
        stats.occupied_deposited += a;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    CellState & cell = grid[i];
    const double free = cell.mass.free * factor;
    double occ = mass[i] * factor;
    if (occ + free > 1.0) {
      occ = std::max(0.0, 1.0 - free);
    }
    cell.mass = {occ, free};
    if (mass[i] > 0.0) {
      const Eigen::Vector2d v = momentum[i] / mass[i];
      set_velocity(cell, v, second[i] / mass[i] - v * v.transpose());
    } else {
      cell.v_east = cell.v_north = 0.0;
      // Keep whatever covariance the cell had; it carries no moving evidence.
    }
  }
  grid.set_timestamp(grid.timestamp() + dt);
  return stats;
}

namespace
{

void fuse_velocity(
  CellState & out, const CellState & predicted, const CellState & measured, const Vec2 & center,
  const FusionConfig & cfg)
{
  if (!(out.mass.occupied > 0.0)) {
    out.v_east = out.v_north = 0.0;
    return;
  }
  const double pred_occ = predicted.mass.occupied;
  const double meas_occ = measured.mass.occupied;
  if (pred_occ > cfg.velocity_gate && meas_occ > cfg.velocity_gate) {
    CellState floored = measured;
    floored.var_east = std::max(floored.var_east, kVelocityVarianceFloor);
    floored.var_north = std::max(floored.var_north, kVelocityVarianceFloor);
    const KalmanCell prior = kalman_from_cell(predicted, center);
    Vec4 z;
    z << center.x(), center.y(), measured.v_east, measured.v_north;
    const KalmanCell post = correct(prior, z, observation_noise(cfg.noise, floored));
    set_velocity(out, post.state.tail<2>(), post.covariance.block<2, 2>(2, 2));
    return;
  }
  const CellState & source = meas_occ > pred_occ ? measured : predicted;
  out.v_east = source.v_east;
  out.v_north = source.v_north;
  out.var_east = source.var_east;
  out.var_north = source.var_north;
  out.cov_north_east = source.cov_north_east;
}

}  // namespace

IngestReport ingest_local(TrafficArea & area, const Dogma & local, const FusionConfig & cfg)
{
  IngestReport report;
  if (!overlap(area, local)) {
    report.status = IngestStatus::NoOverlap;
    return report;
  }
  if (!area.collective) {
    init_collective(area, cfg.noise.cell_size);
    area.collective->set_timestamp(local.timestamp());
    report.initialized = true;
  }
  Dogma & coll = *area.collective;
  double dt = local.timestamp() - coll.timestamp();
  if (dt < -cfg.reorder_tolerance) {
    report.status = IngestStatus::OutOfOrder;
    report.dt = dt;
    return report;
  }
  area.last_overlap_time = std::max(area.last_overlap_time, local.timestamp());
  dt = std::max(dt, 0.0);
  report.dt = dt;
  predict_grid(coll, dt, cfg);

  // Collective cells whose centers may fall inside the local footprint.
  double x_min = std::numeric_limits<double>::infinity();
  double y_min = x_min;
  double x_max = -x_min;
  double y_max = -x_min;
  for (const auto & p : local.footprint()) {
    const Vec2 g = coll.to_grid(p);
    x_min = std::min(x_min, g.x());
    x_max = std::max(x_max, g.x());
    y_min = std::min(y_min, g.y());
    y_max = std::max(y_max, g.y());
  }
  const double cs = coll.cell_size();
  const int c0 = std::max(0, static_cast<int>(std::floor(x_min / cs)));
  const int c1 = std::min(coll.size() - 1, static_cast<int>(std::floor(x_max / cs)));
  const int r0 = std::max(0, static_cast<int>(std::floor(y_min / cs)));
  const int r1 = std::min(coll.size() - 1, static_cast<int>(std::floor(y_max / cs)));

  double conflict_sum = 0.0;
  const CellState unknown = CellState::unknown();
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      const Vec2 center = coll.cell_center(r, c);
      const auto idx = local.index_of(center);
      if (!idx) {
        continue;
      }
      const CellState & meas = local.at(idx->row, idx->col);
      CellState & cell = coll.at(r, c);
      ++report.cells_fused;
      const auto fused = try_combine(cell.mass, meas.mass);
      if (!fused) {
        conflict_sum += 1.0;
        ++report.cells_conflict;
        cell = unknown;
        continue;
      }
      conflict_sum += fused->conflict;
      const CellState predicted = cell;
      cell.mass = fused->fused;
      fuse_velocity(cell, predicted, meas, center, cfg);
    }
  }
  report.mean_conflict =
    report.cells_fused > 0 ? conflict_sum / static_cast<double>(report.cells_fused) : 0.0;
  coll.set_timestamp(std::max(coll.timestamp(), local.timestamp()));
  report.status = IngestStatus::Fused;
  return report;
}

void remove_collective(TrafficArea & area, double now, double grace)
{
  if (area.collective && now - area.last_overlap_time > grace) {
    area.collective.reset();
  }
}

Dogma stamp_self_report(Dogma grid, const OrientedRect & footprint, const Vec2 & velocity)
{
  if (!(footprint.length > 0.0) || !(footprint.width > 0.0)) {
    return grid;
  }
  double x_min = std::numeric_limits<double>::infinity();
  double y_min = x_min;
  double x_max = -x_min;
  double y_max = -x_min;
  for (const auto & p : footprint.corners()) {
    const Vec2 g = grid.to_grid(p);
    x_min = std::min(x_min, g.x());
    x_max = std::max(x_max, g.x());
    y_min = std::min(y_min, g.y());
    y_max = std::max(y_max, g.y());
  }
  const double cs = grid.cell_size();
  const int c0 = std::max(0, static_cast<int>(std::floor(x_min / cs)));
  const int c1 = std::min(grid.size() - 1, static_cast<int>(std::floor(x_max / cs)));
  const int r0 = std::max(0, static_cast<int>(std::floor(y_min / cs)));
  const int r1 = std::min(grid.size() - 1, static_cast<int>(std::floor(y_max / cs)));
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (!footprint.contains(grid.cell_center(r, c))) {
        continue;
      }
      CellState & cell = grid.at(r, c);
      cell.mass = {1.0, 0.0};
      cell.v_east = velocity.x();
      cell.v_north = velocity.y();
      cell.var_east = cell.var_north = kVelocityVarianceFloor;
      cell.cov_north_east = 0.0;
    }
  }
  return grid;
}

Dogma produce_submap(
  const TrafficArea & area, const std::string & vehicle_id, const VehicleRecord & vehicle,
  const FusionConfig & cfg, double now)
{
  if (!area.collective) {
    throw Error(ErrorCode::NotInitialized, "traffic area '" + area.id + "' has no collective grid");
  }
  if (vehicle.grid_size <= 0) {
    throw Error(ErrorCode::NoPose, "no local grid geometry known for '" + vehicle_id + "'");
  }
  const Dogma & coll = *area.collective;
  Dogma sub = extract_submap(coll, vehicle.pose, vehicle.grid_size, vehicle.grid_cell_size);
  sub.set_source_id(vehicle_id);
  const double horizon = std::max(0.0, now - coll.timestamp()) + area.latency.estimate();
  predict_grid(sub, horizon, cfg);
  sub.set_timestamp(coll.timestamp() + horizon);
  return sub;
}

FusionNode::FusionNode(FusionConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

TrafficArea & FusionNode::add_area(
  const std::string & id, const Pose & origin, double width, double height)
{
  if (areas_.count(id) != 0) {
    throw Error(ErrorCode::ConfigError, "duplicate traffic area '" + id + "'");
  }
  if (!(width > 0.0) || !(height > 0.0)) {
    throw Error(ErrorCode::ConfigError, "traffic area dimensions must be positive");
  }
  TrafficArea a{id, Pose(origin.x, origin.y, 0.0), width, height, std::nullopt,
                LatencyTracker(cfg_.latency_window), 0.0};
  return areas_.emplace(id, std::move(a)).first->second;
}

TrafficArea & FusionNode::area(const std::string & id)
{
  auto it = areas_.find(id);
  if (it == areas_.end()) {
    throw Error(ErrorCode::ConfigError, "unknown traffic area '" + id + "'");
  }
  return it->second;
}

const TrafficArea & FusionNode::area(const std::string & id) const
{
  auto it = areas_.find(id);
  if (it == areas_.end()) {
    throw Error(ErrorCode::ConfigError, "unknown traffic area '" + id + "'");
  }
  return it->second;
}

void FusionNode::report_pose(
  const std::string & vehicle_id, const Pose & pose, double length, double width, double timestamp)
{
  auto it = vehicles_.find(vehicle_id);
  if (it != vehicles_.end() && timestamp < it->second.timestamp) {
    throw Error(
      ErrorCode::StaleReport, "report for '" + vehicle_id + "' older than the stored one");
  }
  VehicleRecord & rec = vehicles_[vehicle_id];
  rec.pose = pose;
  rec.length = length;
  rec.width = width;
  rec.timestamp = timestamp;
  rec.has_pose = true;
}

bool FusionNode::has_vehicle(const std::string & vehicle_id) const
{
  auto it = vehicles_.find(vehicle_id);
  return it != vehicles_.end() && it->second.has_pose;
}

const VehicleRecord & FusionNode::vehicle(const std::string & vehicle_id) const
{
  auto it = vehicles_.find(vehicle_id);
  if (it == vehicles_.end() || !it->second.has_pose) {
    throw Error(ErrorCode::NoPose, "no pose reported for '" + vehicle_id + "'");
  }
  return it->second;
}

IngestReport FusionNode::receive(const Dogma & local, double arrival_ts)
{
  if (local.kind() != GridKind::Local) {
    throw Error(ErrorCode::ConfigError, "only local grids can be ingested");
  }
  auto & rec = vehicles_[local.source_id()];
  rec.grid_size = local.size();
  rec.grid_cell_size = local.cell_size();

  IngestReport report;
  const TrafficArea * target = nullptr;
  for (auto & [id, a] : areas_) {
    if (!overlap(a, local)) {
      continue;
    }
    a.latency.observe(local.timestamp(), arrival_ts);
    report = ingest_local(a, local, cfg_);
    target = &a;
    break;
  }
  char line[256];
  std::snprintf(
    line, sizeof(line), "%.9g %s %s %.9g %.9g %zu %zu %.9g", local.timestamp(),
    target ? target->id.c_str() : "-", local.source_id().c_str(), report.dt,
    report.mean_conflict, report.cells_fused, report.cells_conflict,
    target ? target->latency.estimate() : 0.0);
  log_.emplace_back(line);
  return report;
}

Dogma FusionNode::produce_submap(
  const std::string & area_id, const std::string & vehicle_id, double now) const
{
  auto it = vehicles_.find(vehicle_id);
  if (it == vehicles_.end() || !it->second.has_pose) {
    throw Error(ErrorCode::NoPose, "no pose reported for '" + vehicle_id + "'");
  }
  return dogma::produce_submap(area(area_id), vehicle_id, it->second, cfg_, now);
}

void FusionNode::expire(double now, double grace)
{
  for (auto & [id, a] : areas_) {
    remove_collective(a, now, grace);
  }
}

}  // namespace dogma
