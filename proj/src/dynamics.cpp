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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace dogma
{
namespace
{

constexpr double kMaxCoverage = 1.0 - 1e-12;
constexpr double kConditionLimit = 1e12;
constexpr double kDegenerateDeterminant = 1e-18;
constexpr double kKernelSigmas = 3.0;
// Kernel windows wider than this (in cells, per side) are clipped; the clipped
// tail is absorbed by renormalization.
constexpr int kMaxKernelHalfCells = 256;

double coverage_z(const NoiseConfig & cfg) { return z_score(std::min(cfg.coverage, kMaxCoverage)); }

// P(a < X < b) for X ~ N(0, 1), evaluated on the tail side for precision.
double normal_interval(double a, double b)
{
  constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  if (a >= 0.0) {
    return 0.5 * (std::erfc(a * inv_sqrt2) - std::erfc(b * inv_sqrt2));
  }
  if (b <= 0.0) {
    return 0.5 * (std::erfc(-b * inv_sqrt2) - std::erfc(-a * inv_sqrt2));
  }
  return 0.5 * (std::erf(b * inv_sqrt2) - std::erf(a * inv_sqrt2));
}

constexpr std::array<double, 5> kGaussNodes{
  -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{
  0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
  0.2369268850561891};

}  // namespace

void NoiseConfig::validate() const
{
  if (!(a_max > 0.0)) {
    throw Error(ErrorCode::ConfigError, "a_max must be positive");
  }
  if (!(coverage > 0.0 && coverage < 1.0)) {
    throw Error(ErrorCode::ConfigError, "coverage probability must lie in (0, 1)");
  }
  if (!(cell_size > 0.0)) {
    throw Error(ErrorCode::ConfigError, "cell size must be positive");
  }
}

double inverse_erf(double x)
{
  if (!(x > -1.0 && x < 1.0)) {
    throw Error(ErrorCode::DomainError, "erf^-1 argument must lie in (-1, 1)");
  }
  if (x == 0.0) {
    return 0.0;
  }
  // Single-precision rational seed (M. Giles), then Newton polish.
  double w = -std::log((1.0 - x) * (1.0 + x));
  double p;
  if (w < 5.0) {
    w -= 2.5;
    p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
  } else {
    w = std::sqrt(w) - 3.0;
    p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
  }
  double y = p * x;
  const double ax = std::abs(x);
  const double sign = x < 0.0 ? -1.0 : 1.0;
  for (int i = 0; i < 3; ++i) {
    const double ay = std::abs(y);
    // Residual on the complementary side near |x| -> 1.
    const double residual = ax > 0.5 ? (1.0 - ax) - std::erfc(ay) : std::erf(ay) - ax;
    const double slope = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-ay * ay);
    y = sign * (ay - residual / slope);
  }
  return y;
}

double z_score(double p)
{
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::DomainError, "coverage probability " + std::to_string(p) + " not in (0, 1)");
  }
  return std::numbers::sqrt2 * inverse_erf(p);
}

Mat4 process_noise(const NoiseConfig & cfg, double dt)
{
  const double z = coverage_z(cfg);
  const double scale = dt * dt * cfg.a_max * cfg.a_max / (z * z);
  Mat4 q = Mat4::Zero();
  q(0, 0) = q(1, 1) = 0.25 * dt * dt * scale;
  q(2, 2) = q(3, 3) = scale;
  return q;
}

Mat2 velocity_covariance(const CellState & cell)
{
  Mat2 s;
  s << cell.var_east, cell.cov_north_east, cell.cov_north_east, cell.var_north;
  return s;
}

void set_velocity(CellState & cell, const Eigen::Vector2d & velocity, const Mat2 & covariance)
{
  cell.v_east = velocity.x();
  cell.v_north = velocity.y();
  cell.var_east = std::max(covariance(0, 0), 0.0);
  cell.var_north = std::max(covariance(1, 1), 0.0);
  const double bound = std::sqrt(cell.var_east * cell.var_north);
  cell.cov_north_east = std::clamp(0.5 * (covariance(0, 1) + covariance(1, 0)), -bound, bound);
}

Mat4 observation_noise(const NoiseConfig & cfg, const CellState & cell)
{
  const double z = coverage_z(cfg);
  Mat4 r = Mat4::Zero();
  r(0, 0) = r(1, 1) = cfg.cell_size * cfg.cell_size / (4.0 * z * z);
  r.block<2, 2>(2, 2) = velocity_covariance(cell);
  return r;
}

KalmanCell predict(const KalmanCell & cell, double dt, const Mat4 & process)
{
  Mat4 f = Mat4::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  KalmanCell out;
  out.state = f * cell.state;
  const Mat4 p = f * cell.covariance * f.transpose() + process;
  out.covariance = 0.5 * (p + p.transpose());
  return out;
}

KalmanCell correct(const KalmanCell & predicted, const Vec4 & measurement, const Mat4 & observation)
{
  Mat4 s = predicted.covariance + observation;
  s = 0.5 * (s + s.transpose());
  const Eigen::SelfAdjointEigenSolver<Mat4> eig(s, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kConditionLimit) {
    throw Error(ErrorCode::SingularMatrix, "P + R condition number exceeds 1e12");
  }
  const Mat4 gain = predicted.covariance * s.inverse();
  KalmanCell out;
  out.state = predicted.state + gain * (measurement - predicted.state);
  const Mat4 p = (Mat4::Identity() - gain) * predicted.covariance;
  out.covariance = 0.5 * (p + p.transpose());
  return out;
}

KalmanCell kalman_from_cell(const CellState & cell, const Vec2 & center)
{
  KalmanCell k;
  k.state << center.x(), center.y(), cell.v_east, cell.v_north;
  k.covariance.block<2, 2>(2, 2) = velocity_covariance(cell);
  return k;
}

SpreadResult spread_weights(
  const Dogma & target, const Vec2 & mean, const Mat2 & covariance, SpreadMode mode)
{
  SpreadResult result;
  const double cs = target.cell_size();
  const Vec2 m = target.to_grid(mean);

  // Covariance in the grid frame: R^T S R.
  const double c = std::cos(target.corner().yaw);
  const double s = std::sin(target.corner().yaw);
  Mat2 rot;
  rot << c, -s, s, c;
  const Mat2 cov = rot.transpose() * covariance * rot;
  const double det = cov.determinant();

  if (!(det >= kDegenerateDeterminant) || cov(0, 0) <= 0.0 || cov(1, 1) <= 0.0) {
    result.degenerate = true;
    const int col = static_cast<int>(std::floor(m.x() / cs));
    const int row = static_cast<int>(std::floor(m.y() / cs));
    if (target.in_range(row, col)) {
      result.weights.push_back({{row, col}, 1.0});
    }
    return result;
  }

  const double sx = std::sqrt(cov(0, 0));
  const double sy = std::sqrt(cov(1, 1));
  const Mat2 info = cov.inverse();
  const bool separable = std::abs(cov(0, 1)) <= 1e-12 * sx * sy;
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  // Conditional y | x, and enough x panels to resolve both the x marginal and
  // the drift of the conditional mean across a cell.
  const double slope = cov(0, 1) / cov(0, 0);
  const double cond_sd = std::sqrt(det) / sx;
  const double scale =
    separable ? sx : std::min(sx, cond_sd / std::max(std::abs(slope), 1e-300));
  const int panels = std::clamp(static_cast<int>(std::ceil(2.0 * cs / scale)), 1, 64);

  auto density = [&](double x, double y) {
    const Vec2 d{x - m.x(), y - m.y()};
    return norm * std::exp(-0.5 * d.dot(info * d));
  };

  const int col_center = static_cast<int>(std::floor(m.x() / cs));
  const int row_center = static_cast<int>(std::floor(m.y() / cs));
  const int half_cols =
    std::min(kMaxKernelHalfCells, static_cast<int>(std::ceil(kKernelSigmas * sx / cs)) + 1);
  const int half_rows =
    std::min(kMaxKernelHalfCells, static_cast<int>(std::ceil(kKernelSigmas * sy / cs)) + 1);

  double total = 0.0;
  for (int row = row_center - half_rows; row <= row_center + half_rows; ++row) {
    const double y0 = row * cs;
    const double y1 = y0 + cs;
    for (int col = col_center - half_cols; col <= col_center + half_cols; ++col) {
      const double x0 = col * cs;
      const double x1 = x0 + cs;
      // Keep the cell if its closest point to the mean is inside the 3-sigma ellipse.
      const Vec2 nearest{std::clamp(m.x(), x0, x1) - m.x(), std::clamp(m.y(), y0, y1) - m.y()};
      if (nearest.dot(info * nearest) > kKernelSigmas * kKernelSigmas) {
        continue;
      }
      double w;
      if (mode == SpreadMode::CenterApprox) {
        w = density(x0 + 0.5 * cs, y0 + 0.5 * cs) * cs * cs;
      } else if (separable) {
        w = normal_interval((x0 - m.x()) / sx, (x1 - m.x()) / sx) *
            normal_interval((y0 - m.y()) / sy, (y1 - m.y()) / sy);
      } else {
        // Outer integral over x of the conditional y-interval probability.
        w = 0.0;
        const double panel = (x1 - x0) / panels;
        for (int k = 0; k < panels; ++k) {
          const double a = x0 + k * panel;
          for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
            const double x = a + 0.5 * panel * (1.0 + kGaussNodes[i]);
            const double u = (x - m.x()) / sx;
            const double mu = m.y() + slope * (x - m.x());
            w += kGaussWeights[i] * std::exp(-0.5 * u * u) *
                 normal_interval((y0 - mu) / cond_sd, (y1 - mu) / cond_sd);
          }
        }
        w *= 0.5 * panel / (std::sqrt(2.0 * std::numbers::pi) * sx);
      }
      if (!(w > 0.0)) {
        continue;
      }
      total += w;
      if (target.in_range(row, col)) {
        result.weights.push_back({{row, col}, w});
      }
    }
  }

  if (total <= 0.0) {
    // Kernel too narrow for any quadrature point to register: place at the mean.
    result.weights.clear();
    result.degenerate = true;
    if (target.in_range(row_center, col_center)) {
      result.weights.push_back({{row_center, col_center}, 1.0});
    }
    return result;
  }
  for (auto & cw : result.weights) {
    cw.weight /= total;
  }
  return result;
}

double redistribute_mass(
  double mass, const Vec2 & mean, const Mat2 & covariance, const Dogma & target, SpreadMode mode,
  std::span<double> accumulator)
{
  const auto spread = spread_weights(target, mean, covariance, mode);
  double deposited = 0.0;
  const auto d = static_cast<std::size_t>(target.size());
  for (const auto & cw : spread.weights) {
    const double add = mass * cw.weight;
    const auto row = static_cast<std::size_t>(cw.index.row);
    accumulator[row * d + static_cast<std::size_t>(cw.index.col)] += add;
    deposited += add;
  }
  return deposited;
}

}  // namespace dogma
