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

#include "dogma/dynamics.hpp"
#include "dogma/error.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace dogma;

namespace
{

Mat4 random_spd(std::mt19937_64 & rng, double scale)
{
  std::normal_distribution<double> n(0.0, 1.0);
  Mat4 a;
  for (int i = 0; i < 16; ++i) {
    a(i / 4, i % 4) = n(rng);
  }
  return scale * (a * a.transpose() + 0.1 * Mat4::Identity());
}

double min_eigenvalue(const Mat4 & m)
{
  return Eigen::SelfAdjointEigenSolver<Mat4>(m).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("z-score")
{
  CHECK(z_score(0.6827) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(z_score(0.9545) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(z_score(1e-9) < 1e-8);
  CHECK_THROWS_AS(z_score(0.0), Error);
  CHECK_THROWS_AS(z_score(1.0), Error);
  CHECK_THROWS_AS(z_score(-0.3), Error);
  for (double p = 0.001; p < 0.9999; p += 0.00731) {
    CHECK(std::erf(z_score(p) / std::sqrt(2.0)) == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("inverse error function accuracy")
{
  for (double x = -0.999; x < 1.0; x += 0.0173) {
    CHECK(std::erf(inverse_erf(x)) == doctest::Approx(x).epsilon(1e-12));
  }
  // Tail: compare complements so precision is not lost near 1.
  for (double t : {1e-4, 1e-7, 1e-10, 1e-13}) {
    CHECK(std::erfc(inverse_erf(1.0 - t)) == doctest::Approx(t).epsilon(1e-6));
  }
}

TEST_CASE("process noise")
{
  const NoiseConfig cfg;
  CHECK(process_noise(cfg, 0.0).isZero());
  const Mat4 q = process_noise(cfg, 0.1);
  CHECK(q(2, 2) == doctest::Approx(0.2406).epsilon(1e-3 / 0.2406));
  CHECK(q(3, 3) == doctest::Approx(q(2, 2)));
  CHECK(q(0, 0) == doctest::Approx(6.015e-4).epsilon(2e-3));
  const double z = z_score(cfg.coverage);
  CHECK(q(2, 2) == doctest::Approx(0.01 * 9.81 * 9.81 / (z * z)).epsilon(1e-12));
  const Mat4 q2 = process_noise(cfg, 0.2);
  CHECK(q2(2, 2) == doctest::Approx(4.0 * q(2, 2)));
  CHECK(q2(0, 0) == doctest::Approx(16.0 * q(0, 0)));
  CHECK(q(0, 2) == 0.0);
}

TEST_CASE("observation noise")
{
  const NoiseConfig cfg;
  CellState cell;
  cell.var_north = 0.5;
  cell.var_east = 0.5;
  cell.cov_north_east = 0.1;
  const Mat4 r = observation_noise(cfg, cell);
  CHECK(r(0, 0) == doctest::Approx(1.40625e-3).epsilon(1e-6 / 1.40625e-3));
  CHECK(r(1, 1) == doctest::Approx(r(0, 0)));
  CHECK(r(2, 2) == 0.5);
  CHECK(r(3, 3) == 0.5);
  CHECK(r(2, 3) == 0.1);
  CHECK(r(3, 2) == 0.1);
  CHECK(r(0, 2) == 0.0);

  // v_x is east, v_y is north
  cell.var_east = 2.0;
  cell.var_north = 3.0;
  const Mat4 r2 = observation_noise(cfg, cell);
  CHECK(r2(2, 2) == 2.0);
  CHECK(r2(3, 3) == 3.0);

  NoiseConfig sharp;
  sharp.coverage = 1.0 - 1e-15;
  const double pos = observation_noise(sharp, cell)(0, 0);
  CHECK(std::isfinite(pos));
  CHECK(pos > 0.0);
}

TEST_CASE("predict")
{
  KalmanCell k;
  k.state << 0, 0, 2, 1;
  const KalmanCell same = predict(k, 0.0, Mat4::Zero());
  CHECK(same.state == k.state);
  const KalmanCell moved = predict(k, 0.5, Mat4::Zero());
  CHECK(moved.state.isApprox(Vec4(1, 0.5, 2, 1)));

  KalmanCell unit;
  unit.covariance = Mat4::Identity();
  const Mat4 p = predict(unit, 1.0, Mat4::Zero()).covariance;
  CHECK(p(0, 0) == doctest::Approx(2.0));
  CHECK(p(1, 1) == doctest::Approx(2.0));
  CHECK(p(0, 2) == doctest::Approx(1.0));
  CHECK(p(1, 3) == doctest::Approx(1.0));

  // F composes exactly without process noise.
  std::mt19937_64 rng(5);
  KalmanCell r;
  r.state << 1, -2, 0.3, 0.7;
  r.covariance = random_spd(rng, 1.0);
  const KalmanCell two = predict(predict(r, 0.13, Mat4::Zero()), 0.29, Mat4::Zero());
  const KalmanCell one = predict(r, 0.42, Mat4::Zero());
  CHECK((two.state - one.state).norm() < 1e-12);
  CHECK((two.covariance - one.covariance).norm() < 1e-12);
}

TEST_CASE("correct: limits and the scalar closed form")
{
  KalmanCell k;
  k.state << 1, 2, 3, 4;
  const Vec4 z(2, 0, 5, 1);
  k.covariance = 1e-12 * Mat4::Identity();
  CHECK((correct(k, z, Mat4::Identity()).state - k.state).norm() < 1e-9);
  k.covariance = Mat4::Identity();
  CHECK((correct(k, z, 1e-12 * Mat4::Identity()).state - z).norm() < 1e-9);
  const KalmanCell half = correct(k, z, Mat4::Identity());
  CHECK((half.state - 0.5 * (k.state + z)).norm() < 1e-12);
  CHECK((half.covariance - 0.5 * Mat4::Identity()).norm() < 1e-12);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> var(0.01, 4.0);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    KalmanCell p;
    Mat4 r = Mat4::Zero();
    Vec4 meas;
    for (int i = 0; i < 4; ++i) {
      p.state(i) = n(rng);
      p.covariance(i, i) = var(rng);
      r(i, i) = var(rng);
      meas(i) = n(rng);
    }
    const KalmanCell out = correct(p, meas, r);
    for (int i = 0; i < 4; ++i) {
      const auto ref = oracle::kalman_1d({p.state(i), p.covariance(i, i)}, meas(i), r(i, i));
      CHECK(std::abs(out.state(i) - ref.mean) < 1e-9);
      CHECK(std::abs(out.covariance(i, i) - ref.var) < 1e-9);
    }
  }
}

TEST_CASE("correct rejects ill-conditioned innovation covariance")
{
  KalmanCell k;
  k.covariance = Mat4::Zero();
  Mat4 r = Mat4::Identity();
  r(3, 3) = 1e-14;
  try {
    correct(k, Vec4::Zero(), r);
    FAIL("expected SingularMatrix");
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("covariance stays symmetric PSD over many cycles")
{
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dt(0.0, 0.2);
  std::normal_distribution<double> n(0.0, 1.0);
  const NoiseConfig cfg;
  KalmanCell k;
  k.covariance = random_spd(rng, 0.5);
  double worst = 0.0;
  double asym = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double step = dt(rng);
    k = predict(k, step, process_noise(cfg, step));
    const Vec4 z(n(rng), n(rng), n(rng), n(rng));
    k = correct(k, z, random_spd(rng, 0.05));
    worst = std::min(worst, min_eigenvalue(k.covariance));
    asym = std::max(asym, (k.covariance - k.covariance.transpose()).cwiseAbs().maxCoeff());
  }
  CHECK(worst >= -1e-9);
  CHECK(asym == 0.0);
}

TEST_CASE("cell conversion")
{
  CellState cell;
  cell.v_east = 3.0;
  cell.v_north = -1.0;
  cell.var_east = 0.2;
  cell.var_north = 0.4;
  cell.cov_north_east = 0.05;
  const KalmanCell k = kalman_from_cell(cell, Vec2(7.0, 8.0));
  CHECK(k.state.isApprox(Vec4(7, 8, 3, -1)));
  CHECK(k.covariance.topLeftCorner<2, 2>().isZero());
  const Mat2 v = velocity_covariance(cell);
  CHECK(v(0, 0) == 0.2);
  CHECK(v(1, 1) == 0.4);
  CHECK(v(0, 1) == 0.05);

  CellState out;
  set_velocity(out, Vec2(1.5, 2.5), v);
  CHECK(out.v_east == 1.5);
  CHECK(out.v_north == 2.5);
  CHECK(out.var_east == 0.2);
  CHECK(out.cov_north_east == 0.05);
}
