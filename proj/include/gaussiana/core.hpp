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

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

// Phase-space representation of multimode Gaussian states.
//
// Conventions used throughout the library:
//   * natural units, vacuum covariance matrix = 1/2 * identity;
//   * quadratures interleaved per mode: (q1, p1, q2, p2, ..., qn, pn);
//   * a symplectic matrix F acts as R -> F R, so cov -> F cov F^T.
namespace gaussiana {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kSymplecticTol = 1e-9;
inline constexpr double kPhysicalTol = 1e-9;

/// Shape mismatch, odd phase-space dimension or a mode index out of range.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (non positive
/// definite matrix, singular block, violated precondition).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A covariance matrix, bath or measurement violating the uncertainty
/// principle or another physical constraint.
class PhysicsError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Block-diagonal symplectic form Omega = (+) [[0, 1], [-1, 0]] on n modes.
Matrix omega(int n_modes);

/// Immutable record of a Gaussian state: covariance matrix and first moments.
///
/// Construction checks that the covariance matrix is square with even
/// dimension, symmetric (to kSymmetryTol relative to its scale) and satisfies
/// the uncertainty relation cov + i/2 Omega >= 0 up to `physical_tol`.
class GaussianState {
 public:
  GaussianState(Matrix cov, Vector mean, double physical_tol = kPhysicalTol);
  explicit GaussianState(Matrix cov, double physical_tol = kPhysicalTol);

  int modes() const { return static_cast<int>(mean_.size() / 2); }
  const Matrix& cov() const { return cov_; }
  const Vector& mean() const { return mean_; }

  /// Marginal state of the listed modes, in the given order.
  GaussianState reduced(const std::vector<int>& keep) const;

  /// Two-by-two covariance block between modes i and j.
  Matrix block(int i, int j) const { return cov_.block(2 * i, 2 * j, 2, 2); }

 private:
  Matrix cov_;
  Vector mean_;
};

/// Tensor product of independent states: cov = cov_a (+) cov_b.
GaussianState tensor(const GaussianState& a, const GaussianState& b);

/// Real 2n x 2n matrix F with F Omega F^T = Omega (checked at construction).
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix mat, double tol = kSymplecticTol);

  const Matrix& matrix() const { return mat_; }
  int modes() const { return static_cast<int>(mat_.rows() / 2); }

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;
  SymplecticMatrix transpose() const;
  SymplecticMatrix inverse() const;

 private:
  Matrix mat_;
};

/// True iff || F Omega F^T - Omega ||_max <= tol. Throws DimensionError for a
/// non-square or odd-dimensional F.
bool is_symplectic(const Matrix& f, double tol = kSymplecticTol);

/// Symplectic eigenvalues d_1 >= ... >= d_n of a positive definite covariance
/// matrix: the moduli of the eigenvalues of i Omega cov. Throws DomainError if
/// cov is not positive definite.
std::vector<double> symplectic_eigenvalues(const Matrix& cov);

/// True iff every symplectic eigenvalue is at least 1/2 - tol. Covariance
/// matrices that are not positive definite are reported as unphysical.
bool is_physical(const Matrix& cov, double tol = kPhysicalTol);

struct WilliamsonDecomposition {
  Matrix symplectic;                // S, with cov = S diag(d) S^T
  std::vector<double> eigenvalues;  // d_k, descending

  /// (+)_k d_k * identity(2): the thermal covariance matrix in the middle.
  Matrix diagonal() const;
};

/// Williamson normal form cov = S (+)_k d_k 1_2 S^T. S is not unique when
/// symplectic eigenvalues are degenerate; only the reconstruction is
/// guaranteed.
WilliamsonDecomposition williamson(const Matrix& cov);

/// Euler (Bloch-Messiah) decomposition F = O_left K O_right with O_left,
/// O_right orthogonal symplectic and K = (+)_k diag(s_k, 1/s_k), s_k >= 1.
struct EulerDecomposition {
  Matrix left;
  std::vector<double> squeezing;  // s_k, descending
  Matrix right;

  /// The interleaved single-mode squeezer (+)_k diag(s_k, 1/s_k).
  Matrix squeezer() const;
};

EulerDecomposition euler_decomposition(const SymplecticMatrix& f);

namespace detail {

void require_square_even(const Matrix& m, const char* what);
Matrix symmetric_sqrt(const Matrix& m);

}  // namespace detail

}  // namespace gaussiana
