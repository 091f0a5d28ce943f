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

#ifndef DOGMA__DYNAMICS_HPP_
#define DOGMA__DYNAMICS_HPP_

#include "dogma/grid.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace dogma
{

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;

/// Worst-case acceleration noise model. `coverage` is the probability mass
/// placed inside +-z sigma of the assumed error interval.
struct NoiseConfig
{
  double a_max{9.81};
  double coverage{0.9545};
  double cell_size{0.15};

  void validate() const;
};

/// Constant-velocity cell state [x, y, v_x, v_y] in the world frame (x east, y north).
struct KalmanCell
{
  Vec4 state{Vec4::Zero()};
  Mat4 covariance{Mat4::Zero()};
};

double inverse_erf(double x);

/// z = sqrt(2) erf^-1(p). Throws DomainError for p outside (0, 1).
double z_score(double p);

Mat4 process_noise(const NoiseConfig & cfg, double dt);

/// Position block from the cell discretization, velocity block copied from the cell.
Mat4 observation_noise(const NoiseConfig & cfg, const CellState & cell);

KalmanCell predict(const KalmanCell & cell, double dt, const Mat4 & process);

/// Identity observation model. Throws SingularMatrix when P + R is ill-conditioned.
KalmanCell correct(const KalmanCell & predicted, const Vec4 & measurement, const Mat4 & observation);

/// Kalman state of a grid cell located at `center`. The position block is zero:
/// the cell's location is exact at grid resolution.
KalmanCell kalman_from_cell(const CellState & cell, const Vec2 & center);

/// Velocity [v_x, v_y] covariance from a cell, with v_x = v_east and v_y = v_north.
Mat2 velocity_covariance(const CellState & cell);
void set_velocity(CellState & cell, const Eigen::Vector2d & velocity, const Mat2 & covariance);

enum class SpreadMode { Integrate, CenterApprox };

struct CellWeight
{
  CellIndex index;
  double weight{0.0};
};

struct SpreadResult
{
  std::vector<CellWeight> weights;  // in-grid cells only
  bool degenerate{false};           // nearest-cell placement was used
};

/// Fraction of a bivariate normal N(mean, covariance) landing in each cell of
/// `target` within the 3-sigma ellipse. Weights are normalized over the whole
/// kernel window, so they sum to the in-grid fraction of the kernel.
SpreadResult spread_weights(
  const Dogma & target, const Vec2 & mean, const Mat2 & covariance, SpreadMode mode);

/// Adds mass * weight for every kernel cell into `accumulator` (row-major, size d*d).
/// Returns the mass deposited inside the grid.
double redistribute_mass(
  double mass, const Vec2 & mean, const Mat2 & covariance, const Dogma & target, SpreadMode mode,
  std::span<double> accumulator);

}  // namespace dogma

#endif  // DOGMA__DYNAMICS_HPP_
