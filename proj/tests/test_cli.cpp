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

#include "dogma/grid_io.hpp"
#include "dogma/metrics.hpp"
#include "dogma/scenario.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using namespace dogma;

namespace
{

int cli(const std::string & args)
{
  const std::string cmd = std::string(DOGMA_CLI) + ' ' + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string & name)
{
  const fs::path dir = fs::temp_directory_path() / ("dogma_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli exit codes")
{
  const fs::path dir = scratch("codes");
  CHECK(cli("version") == 0);
  CHECK(cli("") == 1);
  CHECK(cli("bogus") == 1);
  CHECK(cli("metrics --in " + (dir / "missing.dogma").string()) == 1);

  {
    std::ofstream bad(dir / "bad.cfg");
    bad << "no_such_key = 3\n";
  }
  CHECK(cli("run --config " + (dir / "bad.cfg").string() + " --out " + (dir / "o").string()) == 1);
  CHECK(cli("run --config " + (dir / "bad.cfg").string() + " --out x --mode sideways") == 1);

  {
    std::ofstream junk(dir / "junk.dogma");
    junk << "not a grid\n";
  }
  CHECK(cli("metrics --in " + (dir / "junk.dogma").string()) == 2);
}

TEST_CASE("cli run writes metrics and grids")
{
  const fs::path dir = scratch("run");
  ScenarioConfig cfg;
  cfg.steps = 3;
  cfg.beams = 720;
  {
    std::ofstream out(dir / "s.cfg");
    write_scenario_config(out, cfg);
  }
  const fs::path out = dir / "out";
  REQUIRE(cli("run --config " + (dir / "s.cfg").string() + " --out " + out.string()) == 0);
  std::ifstream csv(out / "metrics.csv");
  const auto rows = read_metrics_csv(csv);
  CHECK(rows.size() == 3);
  CHECK(fs::exists(out / "diagnostics.log"));
  CHECK(fs::exists(out / "grids" / "1_0.dogma"));
  CHECK(fs::exists(out / "grids" / "2_2.dogma"));
  CHECK(fs::exists(out / "rasters" / "step_000_fused_free.pgm"));

  const Dogma g = read_dogma(out / "grids" / "1_0.dogma");
  CHECK(g.size() == cfg.local_size);
  CHECK(cli("metrics --in " + (out / "grids" / "1_0.dogma").string()) == 0);

  // Offline fusion of a local grid into an empty collective.
  TrafficArea area;
  area.id = "A";
  area.origin = Pose(cfg.area_origin_x, cfg.area_origin_y);
  area.width = area.height = cfg.area_size;
  init_collective(area, cfg.cell_size);
  write_dogma(dir / "coll.dogma", *area.collective);
  CHECK(cli("fuse --a " + (dir / "coll.dogma").string() + " --b " +
            (out / "grids" / "1_0.dogma").string() + " --out " + (dir / "f.dogma").string()) ==
        0);
  const Dogma fused = read_dogma(dir / "f.dogma");
  CHECK(fused.kind() == GridKind::Collective);
  CHECK(grid_metrics(fused).mean_non_specificity < 1.0);

  // A collective as the local side is rejected; disjoint grids are a runtime error.
  CHECK(cli("fuse --a " + (out / "grids" / "1_0.dogma").string() + " --b " +
            (out / "grids" / "1_0.dogma").string() + " --out " + (dir / "x.dogma").string()) ==
        1);
  write_dogma(dir / "far.dogma", Dogma(10, 0.15, Pose(500, 500), GridKind::Local, "far"));
  CHECK(cli("fuse --a " + (dir / "coll.dogma").string() + " --b " + (dir / "far.dogma").string() +
            " --out " + (dir / "x.dogma").string()) == 2);
}
