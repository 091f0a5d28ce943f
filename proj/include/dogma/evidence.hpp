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

#ifndef DOGMA__EVIDENCE_HPP_
#define DOGMA__EVIDENCE_HPP_

#include <optional>

// Dempster-Shafer evidence over the two-hypothesis frame {Free, Occupied}.
// The empty set never carries mass and the mass on the whole frame is implied
// by the two stored singleton masses.

namespace dogma
{

struct BeliefMass
{
  double occupied{0.0};
  double free{0.0};

  /// Mass on the whole frame, i.e. lack of evidence.
  constexpr double ignorance() const noexcept { return 1.0 - occupied - free; }

  friend constexpr bool operator==(const BeliefMass &, const BeliefMass &) = default;
};

/// Vacuous mass: nothing is known about the cell.
inline constexpr BeliefMass kUnknown{0.0, 0.0};

enum class Hypothesis { Occupied, Free };

struct CombinationResult
{
  BeliefMass fused;
  double conflict{0.0};
};

struct BeliefInterval
{
  double belief{0.0};
  double plausibility{0.0};
};

/// Threshold on 1 - K below which two masses are treated as totally conflicting.
inline constexpr double kTotalConflictEpsilon = 1e-12;

bool is_valid(const BeliefMass & m, double tolerance = 1e-9) noexcept;

/// Dempster's rule. Returns nullopt on total conflict instead of throwing.
std::optional<CombinationResult> try_combine(const BeliefMass & a, const BeliefMass & b) noexcept;

/// Dempster's rule; throws Error{TotalConflict} when 1 - K < kTotalConflictEpsilon.
CombinationResult combine(const BeliefMass & a, const BeliefMass & b);

/// Conflict mass K between two sources (the product mass on the empty set).
constexpr double conflict(const BeliefMass & a, const BeliefMass & b) noexcept
{
  return a.occupied * b.free + a.free * b.occupied;
}

/// Pignistic probability of occupancy.
constexpr double pignistic(const BeliefMass & m) noexcept
{
  return m.occupied + 0.5 * m.ignorance();
}

/// Binary Shannon entropy in bits, with 0 log 0 = 0.
double binary_entropy(double p) noexcept;

double shannon_entropy(const BeliefMass & m) noexcept;

/// Dubois-Prade non-specificity; on a two-element frame this is m(Theta).
constexpr double non_specificity(const BeliefMass & m) noexcept { return m.ignorance(); }

BeliefInterval belief_plausibility(const BeliefMass & m, Hypothesis hypothesis) noexcept;

}  // namespace dogma

#endif  // DOGMA__EVIDENCE_HPP_
