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

#ifndef DOGMA__SCENARIO_RUNNER_HPP_
#define DOGMA__SCENARIO_RUNNER_HPP_

#include "dogma/metrics.hpp"
#include "dogma/scenario.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace dogma
{

inline constexpr const char * kScenarioAreaId = "A";

struct RunOptions
{
  /// Output directory; nothing is written when empty.
  std::filesystem::path out_dir;
  bool write_grids{true};
  bool write_rasters{true};
};

/// Everything known after one message has been processed.
struct StepObservation
{
  const Emission & emission;
  const Dogma & local;
  const IngestReport & report;
  const TrafficArea & area;
  /// Sub-map and metrics row; only set for vehicle 1's messages.
  const Dogma * fused{nullptr};
  const MetricsRow * row{nullptr};
};

using StepObserver = std::function<void(const StepObservation &)>;

struct RunResult
{
  std::vector<MetricsRow> rows;
  std::vector<std::string> diagnostics;
};

/// Drives the scenario's messages through a fusion node in arrival order. For
/// each of vehicle 1's messages the raw local grid is compared with the
/// sub-map the node returns to vehicle 1 on arrival.
RunResult run_scenario(
  const Scenario & scenario, const RunOptions & options, const StepObserver & observer = {});

}  // namespace dogma

#endif  // DOGMA__SCENARIO_RUNNER_HPP_
