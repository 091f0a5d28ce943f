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

#include "dogma/error.hpp"
#include "dogma/evidence.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dogma;

TEST_CASE("combine matches hand-enumerated product pairs")
{
  const auto r = combine({0.6, 0.2}, {0.5, 0.3});
  CHECK(r.conflict == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(r.fused.occupied == doctest::Approx(0.52 / 0.72).epsilon(1e-12));
  CHECK(r.fused.free == doctest::Approx(0.16 / 0.72).epsilon(1e-12));
  CHECK(r.fused.ignorance() == doctest::Approx(0.04 / 0.72).epsilon(1e-9));
  // frozen
  CHECK(r.fused.occupied == doctest::Approx(0.72222).epsilon(1e-5));
  CHECK(r.fused.free == doctest::Approx(0.22222).epsilon(1e-5));
}

TEST_CASE("vacuous mass is neutral")
{
  const auto r = combine(kUnknown, {0.7, 0.1});
  CHECK(r.conflict == 0.0);
  CHECK(r.fused.occupied == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r.fused.free == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("contradictory singletons are total conflict")
{
  CHECK_FALSE(try_combine({1.0, 0.0}, {0.0, 1.0}).has_value());
  try {
    combine({1.0, 0.0}, {0.0, 1.0});
    FAIL("expected TotalConflict");
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::TotalConflict);
  }
}

TEST_CASE("random pairs agree with the power-set enumerator")
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const BeliefMass a = oracle::random_mass(rng);
    const BeliefMass b = oracle::random_mass(rng);
    const auto ref = oracle::enumerate_combination(a, b);
    const auto got = combine(a, b);
    CHECK(std::abs(got.conflict - ref.conflict) < 1e-12);
    CHECK(std::abs(got.fused.occupied - ref.fused.occupied) < 1e-12);
    CHECK(std::abs(got.fused.free - ref.fused.free) < 1e-12);
    CHECK(is_valid(got.fused));
    const auto swapped = combine(b, a);
    CHECK(std::abs(swapped.fused.occupied - got.fused.occupied) < 1e-12);
    CHECK(std::abs(swapped.fused.free - got.fused.free) < 1e-12);
  }
}

TEST_CASE("pignistic, entropy and non-specificity")
{
  CHECK(pignistic(kUnknown) == 0.5);
  CHECK(pignistic({1.0, 0.0}) == 1.0);
  CHECK(pignistic({0.7, 0.1}) == doctest::Approx(0.8));
  CHECK(shannon_entropy(kUnknown) == doctest::Approx(1.0));
  CHECK(shannon_entropy({1.0, 0.0}) == 0.0);
  CHECK(shannon_entropy({0.7, 0.1}) == doctest::Approx(0.72193).epsilon(1e-5));
  CHECK(shannon_entropy({0.3, 0.5}) == doctest::Approx(shannon_entropy({0.5, 0.3})));
  CHECK(non_specificity(kUnknown) == 1.0);
  CHECK(non_specificity({0.5, 0.5}) == 0.0);
  CHECK(non_specificity({0.6, 0.2}) == doctest::Approx(0.2));
}

TEST_CASE("belief and plausibility bracket the pignistic probability")
{
  auto bp = belief_plausibility({0.6, 0.2}, Hypothesis::Occupied);
  CHECK(bp.belief == doctest::Approx(0.6));
  CHECK(bp.plausibility == doctest::Approx(0.8));
  bp = belief_plausibility(kUnknown, Hypothesis::Occupied);
  CHECK(bp.belief == 0.0);
  CHECK(bp.plausibility == 1.0);
  bp = belief_plausibility({1.0, 0.0}, Hypothesis::Free);
  CHECK(bp.belief == 0.0);
  CHECK(bp.plausibility == 0.0);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const BeliefMass m = oracle::random_mass(rng);
    const double p = pignistic(m);
    const auto o = belief_plausibility(m, Hypothesis::Occupied);
    const auto f = belief_plausibility(m, Hypothesis::Free);
    CHECK(o.belief <= p + 1e-15);
    CHECK(p <= o.plausibility + 1e-15);
    CHECK(f.belief <= 1.0 - p + 1e-15);
    CHECK(1.0 - p <= f.plausibility + 1e-15);
  }
}

TEST_CASE("validity")
{
  CHECK(is_valid({0.3, 0.7}));
  CHECK_FALSE(is_valid({0.6, 0.6}));
  CHECK_FALSE(is_valid({-0.1, 0.2}));
}
