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

#include "dogma/evidence.hpp"

#include "dogma/error.hpp"

#include <cmath>
#include <sstream>

namespace dogma
{

const char * to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::TotalConflict: return "TotalConflict";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AlreadyInitialized: return "AlreadyInitialized";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DegenerateCovariance: return "DegenerateCovariance";
    case ErrorCode::StaleReport: return "StaleReport";
    case ErrorCode::NegativeLatency: return "NegativeLatency";
    case ErrorCode::OutOfOrder: return "OutOfOrder";
    case ErrorCode::NotInitialized: return "NotInitialized";
    case ErrorCode::NoPose: return "NoPose";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::GeometryMismatch: return "GeometryMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_valid(const BeliefMass & m, double tolerance) noexcept
{
  return m.occupied >= -tolerance && m.free >= -tolerance &&
         m.occupied + m.free <= 1.0 + tolerance;
}

std::optional<CombinationResult> try_combine(const BeliefMass & a, const BeliefMass & b) noexcept
{
  const double a_theta = a.ignorance();
  const double b_theta = b.ignorance();
  const double k = conflict(a, b);
  const double normalizer = 1.0 - k;
  if (normalizer < kTotalConflictEpsilon) {
    return std::nullopt;
  }
  // {O}∩{O}, {O}∩Θ, Θ∩{O} -> {O}; same for {F}; Θ∩Θ -> Θ (implicit).
  // Cross terms are grouped so that swapping a and b is exact in floating point.
  const double occ = a.occupied * b.occupied + (a.occupied * b_theta + a_theta * b.occupied);
  const double fre = a.free * b.free + (a.free * b_theta + a_theta * b.free);
  return CombinationResult{{occ / normalizer, fre / normalizer}, k};
}

CombinationResult combine(const BeliefMass & a, const BeliefMass & b)
{
  auto result = try_combine(a, b);
  if (!result) {
    std::ostringstream msg;
    msg << "K=" << conflict(a, b) << " for (" << a.occupied << "," << a.free << ") and ("
        << b.occupied << "," << b.free << ")";
    throw Error(ErrorCode::TotalConflict, msg.str());
  }
  return *result;
}

double binary_entropy(double p) noexcept
{
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

double shannon_entropy(const BeliefMass & m) noexcept { return binary_entropy(pignistic(m)); }

BeliefInterval belief_plausibility(const BeliefMass & m, Hypothesis hypothesis) noexcept
{
  if (hypothesis == Hypothesis::Occupied) {
    return {m.occupied, 1.0 - m.free};
  }
  return {m.free, 1.0 - m.occupied};
}

}  // namespace dogma
