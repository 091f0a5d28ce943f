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

#include "dogma/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace dogma
{
namespace
{

void put(std::string & line, double v)
{
  char buf[32];
  // Normalize negative zero so equal grids serialize identically.
  std::snprintf(buf, sizeof(buf), "%.9g", v == 0.0 ? 0.0 : v);
  line += buf;
}

}  // namespace

void write_dogma(std::ostream & out, const Dogma & grid)
{
  std::string line = "DOGMA1 " + std::to_string(grid.size()) + ' ';
  put(line, grid.cell_size());
  line += ' ';
  put(line, grid.pose().x);
  line += ' ';
  put(line, grid.pose().y);
  line += ' ';
  put(line, grid.pose().yaw);
  line += ' ';
  put(line, grid.timestamp());
  line += ' ';
  line += to_string(grid.kind());
  line += ' ';
  line += grid.source_id().empty() ? "-" : grid.source_id();
  line += '\n';
  out << line;

  for (const auto & cell : grid.cells()) {
    line.clear();
    for (double v : {cell.mass.occupied, cell.mass.free, cell.v_north, cell.v_east,
                     cell.var_north, cell.var_east, cell.cov_north_east}) {
      if (!line.empty()) {
        line += ' ';
      }
      put(line, v);
    }
    line += '\n';
    out << line;
  }
}

void write_dogma(const std::filesystem::path & path, const Dogma & grid)
{
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  write_dogma(out, grid);
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
}

Dogma read_dogma(std::istream & in)
{
  std::string header;
  if (!std::getline(in, header)) {
    throw Error(ErrorCode::ParseError, "missing header");
  }
  std::istringstream hs(header);
  std::string magic;
  std::string kind;
  std::string source;
  int size = 0;
  double cell = 0.0;
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double ts = 0.0;
  if (!(hs >> magic >> size >> cell >> x >> y >> yaw >> ts >> kind >> source) ||
      magic != "DOGMA1") {
    throw Error(ErrorCode::ParseError, "bad header '" + header + "'");
  }
  GridKind grid_kind;
  if (kind == "local") {
    grid_kind = GridKind::Local;
  } else if (kind == "collective") {
    grid_kind = GridKind::Collective;
  } else {
    throw Error(ErrorCode::ParseError, "unknown grid kind '" + kind + "'");
  }
  if (size <= 0 || size > 100000 || !(cell > 0.0)) {
    throw Error(ErrorCode::ParseError, "bad grid geometry in header");
  }
  Dogma grid(size, cell, Pose(x, y, yaw), grid_kind, source == "-" ? std::string{} : source, ts);
  for (auto & c : grid.cells()) {
    if (!(in >> c.mass.occupied >> c.mass.free >> c.v_north >> c.v_east >> c.var_north >>
          c.var_east >> c.cov_north_east)) {
      throw Error(ErrorCode::ParseError, "truncated cell data");
    }
    if (!is_valid(c.mass)) {
      throw Error(ErrorCode::ParseError, "cell masses violate m_O + m_F <= 1");
    }
  }
  return grid;
}

Dogma read_dogma(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  return read_dogma(in);
}

void write_pgm(std::ostream & out, const Dogma & grid, Channel channel)
{
  const int d = grid.size();
  out << "P2\n" << d << ' ' << d << "\n255\n";
  std::string line;
  for (int r = d - 1; r >= 0; --r) {
    line.clear();
    for (int c = 0; c < d; ++c) {
      const auto & m = grid.at(r, c).mass;
      const double v = channel == Channel::Occupied ? m.occupied : m.free;
      const int level = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
      if (c > 0) {
        line += ' ';
      }
      line += std::to_string(level);
    }
    line += '\n';
    out << line;
  }
}

void write_pgm(const std::filesystem::path & path, const Dogma & grid, Channel channel)
{
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  write_pgm(out, grid, channel);
}

}  // namespace dogma
