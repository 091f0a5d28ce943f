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

// Command-line front end: scenario runs, grid metrics and offline fusion.

#include "dogma/error.hpp"
#include "dogma/fusion.hpp"
#include "dogma/grid_io.hpp"
#include "dogma/metrics.hpp"
#include "dogma/scenario.hpp"
#include "dogma/scenario_runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace
{

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

bool is_config_error(dogma::ErrorCode code)
{
  return code == dogma::ErrorCode::ConfigError || code == dogma::ErrorCode::DomainError;
}

int cmd_run(
  const std::string & config, const std::string & out, std::optional<std::uint64_t> seed,
  std::optional<std::string> mode, std::optional<int> steps)
{
  dogma::ScenarioConfig cfg = dogma::load_scenario_config(config);
  if (seed) {
    cfg.seed = *seed;
  }
  if (mode) {
    cfg.mode = *mode == "center" ? dogma::SpreadMode::CenterApprox : dogma::SpreadMode::Integrate;
  }
  if (steps) {
    cfg.steps = *steps;
  }
  const dogma::Scenario scenario = dogma::build_t_junction_scenario(cfg);
  dogma::RunOptions options;
  options.out_dir = out;
  const dogma::RunResult result = dogma::run_scenario(scenario, options);
  std::printf("%zu metrics rows written to %s\n", result.rows.size(), out.c_str());
  return 0;
}

int cmd_metrics(const std::string & in)
{
  const dogma::Dogma grid = dogma::read_dogma(std::filesystem::path(in));
  const dogma::GridMetrics m = dogma::grid_metrics(grid);
  std::printf(
    "mean_H=%.9g mean_NS=%.9g mean_mF=%.9g\n", m.mean_entropy, m.mean_non_specificity,
    m.mean_free);
  return 0;
}

int cmd_fuse(const std::string & a, const std::string & b, const std::string & out)
{
  dogma::Dogma collective = dogma::read_dogma(std::filesystem::path(a));
  const dogma::Dogma local = dogma::read_dogma(std::filesystem::path(b));
  if (collective.kind() != dogma::GridKind::Collective) {
    throw dogma::Error(dogma::ErrorCode::ConfigError, "--a must be a collective grid");
  }
  dogma::FusionConfig cfg;
  cfg.noise.cell_size = collective.cell_size();
  dogma::TrafficArea area;
  area.id = "offline";
  area.origin = collective.pose();
  area.width = collective.extent();
  area.height = collective.extent();
  area.collective = std::move(collective);
  const dogma::IngestReport r = dogma::ingest_local(area, local, cfg);
  if (r.status != dogma::IngestStatus::Fused) {
    throw dogma::Error(
      dogma::ErrorCode::NoOverlap, std::string("grid not fused: ") + dogma::to_string(r.status));
  }
  dogma::write_dogma(std::filesystem::path(out), *area.collective);
  std::printf(
    "fused %zu cells, mean K %.9g, %zu total-conflict cells\n", r.cells_fused, r.mean_conflict,
    r.cells_conflict);
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Dynamic occupancy grid fusion tools"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<int> steps;
  auto * run = app.add_subcommand("run", "Run the T-junction scenario");
  run->add_option("--config", config, "Scenario config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--mode", mode, "Mass redistribution mode")
    ->check(CLI::IsMember({"integrate", "center"}));
  run->add_option("--steps", steps, "Override the number of emission steps")
    ->check(CLI::PositiveNumber);

  std::string in;
  auto * metrics = app.add_subcommand("metrics", "Print mean H, NS and m_F of a grid file");
  metrics->add_option("--in", in, "Grid snapshot")->required()->check(CLI::ExistingFile);

  std::string fa;
  std::string fb;
  std::string fout;
  auto * fuse = app.add_subcommand("fuse", "Fuse a local grid into a collective grid");
  fuse->add_option("--a", fa, "Collective grid")->required()->check(CLI::ExistingFile);
  fuse->add_option("--b", fb, "Local grid")->required()->check(CLI::ExistingFile);
  fuse->add_option("--out", fout, "Output grid")->required();

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      return cmd_run(config, out, seed, mode, steps);
    }
    if (*metrics) {
      return cmd_metrics(in);
    }
    if (*fuse) {
      return cmd_fuse(fa, fb, fout);
    }
    std::printf("dogma_cli %s\n", DOGMA_VERSION);
    return 0;
  } catch (const dogma::Error & e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return is_config_error(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception & e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}
