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

#ifndef DOGMA__GRID_IO_HPP_
#define DOGMA__GRID_IO_HPP_

#include "dogma/grid.hpp"

#include <filesystem>
#include <iosfwd>

// Snapshot text format:
//   DOGMA1 d c pose_x pose_y yaw timestamp kind source_id
//   m_O m_F v_N v_E var_vN var_vE cov      (d*d lines, row-major)
// Numbers are written with 9 significant digits.

namespace dogma
{

void write_dogma(std::ostream & out, const Dogma & grid);
void write_dogma(const std::filesystem::path & path, const Dogma & grid);

/// Throws ParseError on malformed input.
Dogma read_dogma(std::istream & in);
Dogma read_dogma(const std::filesystem::path & path);

enum class Channel { Occupied, Free };

/// ASCII graymap (P2), 0-255 linear in mass. Row 0 of the grid is the bottom image row.
void write_pgm(std::ostream & out, const Dogma & grid, Channel channel);
void write_pgm(const std::filesystem::path & path, const Dogma & grid, Channel channel);

}  // namespace dogma

#endif  // DOGMA__GRID_IO_HPP_
