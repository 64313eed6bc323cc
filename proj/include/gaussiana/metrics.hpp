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

#include <string>

#include "gaussiana/core.hpp"

// Entropic quantities, separability tests and correlation measures.
//
// All entropies use the natural logarithm. Two-mode functions throw
// DimensionError for states that do not have exactly two modes; mode 0 is
// subsystem A and mode 1 is subsystem B.
namespace gaussiana {

/// Which subsystem is conditioned on. kAGivenB measures (or traces) B.
enum class Side { kAGivenB, kBGivenA };

enum class LogBase { kBits, kNats };

/// det A, det B, det C and det sigma for sigma = [[A, C], [C^T, B]].
struct LocalInvariants {
  double i1 = 0.0;
  double i2 = 0.0;
  double i3 = 0.0;
  double i4 = 0.0;

  double delta() const { return i1 + i2 + 2.0 * i3; }
  /// Delta for the partially transposed matrix (I3 -> -I3).
  double delta_transposed() const { return i1 + i2 - 2.0 * i3; }
};

/// Standard form [[a,0,c1,0],[0,a,0,c2],[c1,0,b,0],[0,c2,0,b]] with the
/// convention c1 >= |c2| and c1 >= 0.
struct StandardForm {
  double a = 0.0;
  double b = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  Matrix matrix() const;
};

struct SymplecticPair {
  double plus = 0.0;
  double minus = 0.0;
};

struct DuanResult {
  double lhs = 0.0;
  bool entangled = false;
  double r1 = 0.0;
  double r2 = 0.0;
  std::string diagnostic;  // non-empty when the test could not be evaluated
};

/// mu = 1 / (2^n sqrt(det sigma)).
double purity(const GaussianState& state);

/// f(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), with f(1/2) = 0.
/// Arguments in [1/2 - tol, 1/2] clamp to zero; smaller ones throw DomainError.
double f_entropy(double x, double tol = kPhysicalTol);

/// Sum of f(d_k) over the symplectic eigenvalues.
double von_neumann_entropy(const GaussianState& state);

LocalInvariants local_invariants(const Matrix& cov);

/// d_+ and d_- of a two-mode covariance matrix from its invariants.
SymplecticPair symplectic_eigenvalues_2m(const LocalInvariants& inv);

StandardForm standard_form(const GaussianState& state);

double mutual_information(const GaussianState& state);

/// S(AB) - S(B) for kAGivenB, S(AB) - S(A) for kBGivenA. May be negative.
double conditional_entropy(const GaussianState& state, Side side);

/// Symplectic eigenvalues of the partially transposed covariance matrix.
SymplecticPair ppt_symplectic_eigenvalues(const GaussianState& state);

/// PPT criterion: separable iff the smaller transposed eigenvalue >= 1/2 - tol.
bool is_separable_ppt(const GaussianState& state, double tol = kPhysicalTol);

/// Duan-type inequality on the standard form with local squeezings r1, r2;
/// `entangled` is set when the left-hand side is negative.
DuanResult duan_criterion(const StandardForm& sf, double r1 = 0.0, double r2 = 0.0);

/// duan_criterion minimised over r1 = r2 on a uniform grid.
DuanResult duan_criterion_optimized(const StandardForm& sf, double r_min = -2.0,
                                    double r_max = 2.0, int points = 401);

/// max{0, -log(2 d~_-)}; bits by default.
double log_negativity(const GaussianState& state, LogBase base = LogBase::kBits);

/// Entanglement of formation of a symmetric (a = b) state. Throws DomainError
/// for non-symmetric states.
double eof_symmetric(const GaussianState& state);

/// Entanglement of formation of a state whose standard form has
/// c1 = -c2 >= 0 (two-mode squeezed thermal class). Throws DomainError
/// otherwise.
double eof_squeezed_thermal(const GaussianState& state);

/// Minimal conditional determinant over Gaussian measurements of the
/// conditioning subsystem (the quantity E_min entering the Gaussian discord).
double min_conditional_determinant(const Matrix& cov, Side side);

/// Gaussian quantum discord f(sqrt(E_min)) - S_{A|B} (or with A, B swapped).
double gaussian_discord(const GaussianState& state, Side side);

/// Real part of det(sigma + i/2 Omega), clamped at zero.
double uncertainty_determinant(const Matrix& cov);

}  // namespace gaussiana
