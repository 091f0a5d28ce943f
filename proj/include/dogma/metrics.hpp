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

#ifndef DOGMA__METRICS_HPP_
#define DOGMA__METRICS_HPP_

#include "dogma/grid.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dogma
{

struct GridMetrics
{
  double mean_entropy{0.0};
  double mean_non_specificity{0.0};
  double mean_free{0.0};
};

/// Means of Shannon entropy (bits), non-specificity and m_F over all cells.
GridMetrics grid_metrics(const Dogma & grid);

struct MetricsRow
{
  int step{0};
  double virtual_time{0.0};
  double mean_H_local{0.0};
  double mean_H_fused{0.0};
  double mean_NS_local{0.0};
  double mean_NS_fused{0.0};
  double mean_mF_local{0.0};
  double mean_mF_fused{0.0};
  double mean_conflict_K{0.0};
};

extern const char * const kMetricsHeader;

void write_metrics_csv(std::ostream & out, const std::vector<MetricsRow> & rows);
/// Throws ParseError on a malformed file.
std::vector<MetricsRow> read_metrics_csv(std::istream & in);

struct GridDifference
{
  double max{0.0};
  double mean{0.0};
};

/// Largest per-channel |dm|, and the per-cell sum |dm_O| + |dm_F| averaged over cells.
/// Throws GeometryMismatch unless size, cell size and pose agree.
GridDifference compare_grids(const Dogma & a, const Dogma & b);

}  // namespace dogma

#endif  // DOGMA__METRICS_HPP_
