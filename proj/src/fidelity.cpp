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

#include "gaussiana/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace gaussiana {

namespace {

void require_modes(const GaussianState& a, const GaussianState& b, int n, const char* what) {
  if (a.modes() != b.modes()) {
    throw DimensionError(std::string(what) + ": states have different numbers of modes");
  }
  if (n > 0 && a.modes() != n) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "-mode states");
  }
}

// det(sigma + i/2 omega) without clamping, so unphysical input stays visible.
double raw_uncertainty_determinant(const Matrix& cov) {
  const Eigen::MatrixXcd m = cov.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 0.5) *
                                 omega(static_cast<int>(cov.rows() / 2)).cast<std::complex<double>>();
  return m.determinant().real();
}

double exponent_factor(const GaussianState& a, const GaussianState& b, const Matrix& sum) {
  const Vector d = a.mean() - b.mean();
  return std::exp(-0.5 * d.dot(sum.ldlt().solve(d)));
}

// Symplectic eigenvalues at 1/2 up to the round-off floor of a Williamson
// solve, which grows with the square of the covariance scale.
bool numerically_pure(const Matrix& cov) {
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  const double tol = 1e-13 * scale * scale;
  for (double d : symplectic_eigenvalues(cov)) {
    if (d - 0.5 > tol) return false;
  }
  return true;
}

}  // namespace

double overlap(const GaussianState& a, const GaussianState& b) {
  require_modes(a, b, 0, "overlap");
  const Matrix sum = a.cov() + b.cov();
  return exponent_factor(a, b, sum) / std::sqrt(sum.determinant());
}

double fidelity_1m(const GaussianState& a, const GaussianState& b) {
  require_modes(a, b, 1, "fidelity_1m");
  const Matrix sum = a.cov() + b.cov();
  const double big = sum.determinant();
  const double small = std::max(
      0.0, 4.0 * (a.cov().determinant() - 0.25) * (b.cov().determinant() - 0.25));
  return exponent_factor(a, b, sum) / (std::sqrt(big + small) - std::sqrt(small));
}

double fidelity_2m(const GaussianState& a, const GaussianState& b, double tol) {
  require_modes(a, b, 2, "fidelity_2m");
  const Matrix w = omega(2);
  const Matrix& s1 = a.cov();
  const Matrix& s2 = b.cov();
  const double det_sum = (s1 + s2).determinant();
  double inv_a = (w * s1 * w * s2 - 0.25 * Matrix::Identity(4, 4)).determinant() / det_sum;
  const double u1 = raw_uncertainty_determinant(s1);
  const double u2 = raw_uncertainty_determinant(s2);
  double inv_b = u1 * u2 / det_sum;
  if (inv_b < -tol || u1 < -tol || u2 < -tol) {
    throw PhysicsError("fidelity_2m: negative invariant B, input states are unphysical");
  }
  // With one state pure F = Tr[rho1 rho2]. The closed form would take the
  // square root of a round-off sized x - 1 there.
  if (numerically_pure(s1) || numerically_pure(s2)) return overlap(a, b);
  // Both invariants vanish or stay positive for physical pairs; clamp round-off.
  inv_a = std::max(0.0, inv_a);
  inv_b = std::max(0.0, inv_b);
  const double x = 2.0 * std::sqrt(inv_a) + 2.0 * std::sqrt(inv_b) + 0.5;
  const double root = std::sqrt(x) + std::sqrt(std::max(0.0, x - 1.0));
  return overlap(a, b) * root * root;
}

}  // namespace gaussiana
