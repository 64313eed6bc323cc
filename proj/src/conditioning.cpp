// Copyright 2026 The Gaussiana Authors
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

#include "gaussiana/conditioning.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace gaussiana {

namespace {

// Permutation moving `mode` to the first slot; rows act on interleaved
// quadratures, so it is orthogonal and symplectic.
Matrix measured_first(int mode, int n) {
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  int slot = 1;
  for (int k = 0; k < n; ++k) {
    const int target = k == mode ? 0 : slot++;
    p(2 * target, 2 * k) = 1.0;
    p(2 * target + 1, 2 * k + 1) = 1.0;
  }
  return p;
}

void check_target(const GaussianState& state, int mode, const GaussianPovm& povm) {
  if (state.modes() < 2) {
    throw DimensionError("condition: need at least two modes");
  }
  if (mode < 0 || mode >= state.modes()) {
    throw DimensionError("condition: mode index " + std::to_string(mode) + " out of range");
  }
  if (povm.sigma_m.rows() != 2 || povm.sigma_m.cols() != 2 || povm.outcome.size() != 2) {
    throw DimensionError("condition: measurement must act on a single mode");
  }
}

Eigen::LDLT<Eigen::Matrix2d> factor(const Eigen::Matrix2d& m) {
  Eigen::LDLT<Eigen::Matrix2d> ldlt(m);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      std::abs(m.determinant()) <= 1e-300) {
    throw DomainError("condition: A + sigma_M is singular");
  }
  return ldlt;
}

double density_from(const Eigen::Matrix2d& a_plus_m, const Eigen::Vector2d& diff) {
  const auto ldlt = factor(a_plus_m);
  const double q = diff.dot(ldlt.solve(diff));
  return std::exp(-0.5 * q) / (std::numbers::pi * std::sqrt(a_plus_m.determinant()));
}

}  // namespace

void GaussianPovm::validate(double tol) const {
  if (sigma_m.rows() != 2 || sigma_m.cols() != 2 || outcome.size() != 2) {
    throw DimensionError("measurement covariance must be 2x2 with a 2-vector outcome");
  }
  if (std::abs(sigma_m(0, 1) - sigma_m(1, 0)) > kSymmetryTol) {
    throw PhysicsError("measurement covariance is not symmetric");
  }
  // For a 2x2 matrix, sigma + i/2 omega >= 0 iff trace > 0 and det >= 1/4.
  if (!(sigma_m.trace() > 0.0) || sigma_m.determinant() < 0.25 - tol) {
    throw PhysicsError("measurement covariance violates the uncertainty relation");
  }
}

GaussianPovm heterodyne_povm(std::complex<double> alpha) {
  Vector x(2);
  x << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return {0.5 * Matrix::Identity(2, 2), std::move(x)};
}

GaussianPovm homodyne_povm(double angle, double outcome, double s) {
  if (!(s > 0.0)) {
    throw DomainError("homodyne_povm: squeezing parameter s must be > 0");
  }
  Eigen::Matrix2d r;
  r << std::cos(angle), std::sin(angle), -std::sin(angle), std::cos(angle);
  const Eigen::Matrix2d d = Eigen::Vector2d(s, 0.25 / s).asDiagonal();
  const Eigen::Vector2d x = r.transpose() * Eigen::Vector2d(outcome, 0.0);
  return {r.transpose() * d * r, Vector(x)};
}

Conditioned condition(const GaussianState& state, int mode, const GaussianPovm& povm) {
  check_target(state, mode, povm);
  const int n = state.modes();
  const Matrix p = measured_first(mode, n);
  const Matrix cov = p * state.cov() * p.transpose();
  const Vector mean = p * state.mean();

  const Eigen::Matrix2d a_plus_m = cov.topLeftCorner<2, 2>() + povm.sigma_m;
  const Matrix c = cov.topRightCorner(2, 2 * (n - 1));
  const Matrix b = cov.bottomRightCorner(2 * (n - 1), 2 * (n - 1));
  const auto ldlt = factor(a_plus_m);
  const Eigen::Vector2d diff = povm.outcome - mean.head<2>();

  Matrix cond_cov = b - c.transpose() * ldlt.solve(c);
  cond_cov = 0.5 * (cond_cov + cond_cov.transpose()).eval();
  Vector cond_mean = mean.tail(2 * (n - 1)) + c.transpose() * ldlt.solve(diff);

  return {GaussianState(std::move(cond_cov), std::move(cond_mean)), density_from(a_plus_m, diff)};
}

double outcome_density(const GaussianState& state, int mode, const GaussianPovm& povm) {
  if (mode < 0 || mode >= state.modes()) {
    throw DimensionError("outcome_density: mode index " + std::to_string(mode) +
                         " out of range");
  }
  const Eigen::Matrix2d a_plus_m = state.block(mode, mode) + povm.sigma_m;
  const Eigen::Vector2d diff = povm.outcome - state.mean().segment<2>(2 * mode);
  return density_from(a_plus_m, diff);
}

}  // namespace gaussiana
