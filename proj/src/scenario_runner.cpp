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

#include "dogma/scenario_runner.hpp"

#include "dogma/error.hpp"
#include "dogma/grid_io.hpp"

#include <cstdio>
#include <fstream>

namespace dogma
{

namespace
{

std::filesystem::path raster_path(
  const std::filesystem::path & dir, int step, const char * which, const char * channel)
{
  char name[64];
  std::snprintf(name, sizeof(name), "step_%03d_%s_%s.pgm", step, which, channel);
  return dir / name;
}

void write_text(const std::filesystem::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
}

}  // namespace

RunResult run_scenario(
  const Scenario & scenario, const RunOptions & options, const StepObserver & observer)
{
  const ScenarioConfig & cfg = scenario.cfg;
  const bool files = !options.out_dir.empty();
  std::filesystem::path grids_dir;
  std::filesystem::path raster_dir;
  if (files) {
    std::error_code ec;
    grids_dir = options.out_dir / "grids";
    raster_dir = options.out_dir / "rasters";
    std::filesystem::create_directories(options.out_dir, ec);
    if (options.write_grids) {
      std::filesystem::create_directories(grids_dir, ec);
    }
    if (options.write_rasters) {
      std::filesystem::create_directories(raster_dir, ec);
    }
    if (ec) {
      throw Error(ErrorCode::IoError, "cannot create " + options.out_dir.string());
    }
  }

  FusionNode node(cfg.fusion());
  node.add_area(
    kScenarioAreaId, Pose(cfg.area_origin_x, cfg.area_origin_y), cfg.area_size, cfg.area_size);

  RunResult result;
  double conflict_sum = 0.0;
  int conflict_count = 0;

  for (const Emission & e : scenario.schedule) {
    const ConnectedVehicle & v = scenario.connected[e.vehicle];
    const Dogma local = scenario.render(e);
    node.report_pose(
      v.name, scenario.reported_pose(e.vehicle, e.created), cfg.vehicle_length,
      cfg.vehicle_width, e.created);
    const IngestReport report = node.receive(local, e.arrival);
    if (report.status == IngestStatus::Fused) {
      conflict_sum += report.mean_conflict;
      ++conflict_count;
    }
    if (files && options.write_grids) {
      write_dogma(grids_dir / (v.name + "_" + std::to_string(e.seq) + ".dogma"), local);
    }

    const TrafficArea & area = node.area(kScenarioAreaId);
    if (e.vehicle != 0 || !area.collective) {
      if (observer) {
        observer({e, local, report, area});
      }
      continue;
    }

    const Dogma fused = node.produce_submap(kScenarioAreaId, v.name, e.arrival);
    const GridMetrics ml = grid_metrics(local);
    const GridMetrics mf = grid_metrics(fused);
    MetricsRow row{
      e.seq,
      e.created,
      ml.mean_entropy,
      mf.mean_entropy,
      ml.mean_non_specificity,
      mf.mean_non_specificity,
      ml.mean_free,
      mf.mean_free,
      conflict_count > 0 ? conflict_sum / conflict_count : 0.0};
    conflict_sum = 0.0;
    conflict_count = 0;
    result.rows.push_back(row);

    if (files && options.write_rasters) {
      write_pgm(raster_path(raster_dir, e.seq, "local", "free"), local, Channel::Free);
      write_pgm(raster_path(raster_dir, e.seq, "local", "occupied"), local, Channel::Occupied);
      write_pgm(raster_path(raster_dir, e.seq, "fused", "free"), fused, Channel::Free);
      write_pgm(raster_path(raster_dir, e.seq, "fused", "occupied"), fused, Channel::Occupied);
    }
    if (observer) {
      observer({e, local, report, area, &fused, &result.rows.back()});
    }
  }

  result.diagnostics = node.diagnostics();
  if (files) {
    std::ofstream csv(options.out_dir / "metrics.csv", std::ios::binary);
    write_metrics_csv(csv, result.rows);
    if (!csv) {
      throw Error(ErrorCode::IoError, "cannot write metrics.csv");
    }
    std::string log;
    for (const auto & line : result.diagnostics) {
      log += line;
      log += '\n';
    }
    write_text(options.out_dir / "diagnostics.log", log);
  }
  return result;
}

}  // namespace dogma
