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

#include "gaussiana/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace gaussiana {

namespace {

void require_two_modes(const Matrix& cov, const char* what) {
  if (cov.rows() != 4 || cov.cols() != 4) {
    throw DimensionError(std::string(what) + ": expected a two-mode (4x4) covariance matrix");
  }
}

void require_two_modes(const GaussianState& state, const char* what) {
  require_two_modes(state.cov(), what);
}

// d_+ from the printed closed form, d_- = sqrt(I4) / d_+ (product of the
// roots), which avoids cancellation when d_- is small.
SymplecticPair pair_from_invariants(double delta, double i4) {
  const double disc = std::max(0.0, delta * delta - 4.0 * i4);
  const double plus = std::sqrt(0.5 * (delta + std::sqrt(disc)));
  const double minus = std::sqrt(std::max(0.0, i4)) / plus;
  return {plus, minus};
}

constexpr double kFormTol = 1e-9;

StandardForm form_of(const Matrix& cov) {
  const LocalInvariants inv = local_invariants(cov);
  StandardForm sf;
  sf.a = std::sqrt(inv.i1);
  sf.b = std::sqrt(inv.i2);
  // Local symplectics (A/a)^{-1/2} and (B/b)^{-1/2} turn the diagonal blocks
  // into a 1 and b 1; the remaining rotations diagonalize C, so |c1|, |c2| are
  // the singular values of the transformed C (the quadratic in c^2 that the
  // invariants give loses half the digits when c1 = |c2|).
  const Matrix la = detail::symmetric_sqrt(cov.topLeftCorner(2, 2) / sf.a).inverse();
  const Matrix lb = detail::symmetric_sqrt(cov.bottomRightCorner(2, 2) / sf.b).inverse();
  const Matrix c = la * cov.topRightCorner(2, 2) * lb.transpose();
  const Eigen::JacobiSVD<Matrix> svd(c);
  sf.c1 = svd.singularValues()(0);
  sf.c2 = (inv.i3 < 0.0 ? -1.0 : 1.0) * svd.singularValues()(1);
  return sf;
}

// d_+ and d_- (of the partial transpose when `transposed`) from the standard
// form. Delta^2 - 4 I4 = (a^2 - b^2)^2 + 4 (a c1 + b c2)(a c2 + b c1) vanishes
// without cancellation when d_+ = d_-, where the invariant form loses half
// the digits.
SymplecticPair pair_from(const StandardForm& sf, bool transposed) {
  const double a = sf.a;
  const double b = sf.b;
  const double c1 = sf.c1;
  const double c2 = transposed ? -sf.c2 : sf.c2;
  const double delta = a * a + b * b + 2.0 * c1 * c2;
  const double disc = (a * a - b * b) * (a * a - b * b) + 4.0 * (a * c1 + b * c2) * (a * c2 + b * c1);
  const double i4 = (a * b - c1 * c1) * (a * b - c2 * c2);
  const double plus = std::sqrt(0.5 * (delta + std::sqrt(std::max(0.0, disc))));
  return {plus, std::sqrt(std::max(0.0, i4)) / plus};
}

}  // namespace

Matrix StandardForm::matrix() const {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = b;
  m(0, 2) = m(2, 0) = c1;
  m(1, 3) = m(3, 1) = c2;
  return m;
}

double purity(const GaussianState& state) {
  return 1.0 / (std::pow(2.0, state.modes()) * std::sqrt(state.cov().determinant()));
}

double f_entropy(double x, double tol) {
  if (x < 0.5 - tol || std::isnan(x)) {
    throw DomainError("f_entropy: argument " + std::to_string(x) + " is below 1/2");
  }
  if (x <= 0.5) return 0.0;
  const double up = x + 0.5;
  const double down = x - 0.5;
  return up * std::log(up) - down * std::log(down);
}

double von_neumann_entropy(const GaussianState& state) {
  double s = 0.0;
  for (double d : symplectic_eigenvalues(state.cov())) s += f_entropy(d);
  return s;
}

LocalInvariants local_invariants(const Matrix& cov) {
  require_two_modes(cov, "local_invariants");
  return {cov.topLeftCorner<2, 2>().determinant(), cov.bottomRightCorner<2, 2>().determinant(),
          cov.topRightCorner<2, 2>().determinant(), cov.determinant()};
}

SymplecticPair symplectic_eigenvalues_2m(const LocalInvariants& inv) {
  return pair_from_invariants(inv.delta(), inv.i4);
}

StandardForm standard_form(const GaussianState& state) {
  require_two_modes(state, "standard_form");
  return form_of(state.cov());
}

double mutual_information(const GaussianState& state) {
  require_two_modes(state, "mutual_information");
  const LocalInvariants inv = local_invariants(state.cov());
  const SymplecticPair d = pair_from(form_of(state.cov()), false);
  return f_entropy(std::sqrt(inv.i1)) + f_entropy(std::sqrt(inv.i2)) - f_entropy(d.plus) -
         f_entropy(d.minus);
}

double conditional_entropy(const GaussianState& state, Side side) {
  require_two_modes(state, "conditional_entropy");
  const LocalInvariants inv = local_invariants(state.cov());
  const SymplecticPair d = pair_from(form_of(state.cov()), false);
  const double conditioning = side == Side::kAGivenB ? inv.i2 : inv.i1;
  return f_entropy(d.plus) + f_entropy(d.minus) - f_entropy(std::sqrt(conditioning));
}

SymplecticPair ppt_symplectic_eigenvalues(const GaussianState& state) {
  require_two_modes(state, "ppt_symplectic_eigenvalues");
  return pair_from(form_of(state.cov()), true);
}

bool is_separable_ppt(const GaussianState& state, double tol) {
  return ppt_symplectic_eigenvalues(state).minus >= 0.5 - tol;
}

DuanResult duan_criterion(const StandardForm& sf, double r1, double r2) {
  DuanResult out;
  out.r1 = r1;
  out.r2 = r2;
  const double at = 2.0 * sf.a * std::cosh(2.0 * r1);
  const double bt = 2.0 * sf.b * std::cosh(2.0 * r2);
  const double c1t = 2.0 * sf.c1 * std::exp(r1 + r2);
  const double c2t = 2.0 * sf.c2 * std::exp(-(r1 + r2));
  // The tilded entries are in units where the vacuum variance is 1, so gamma
  // uses b~ - 1 and a~ - 1.
  if (at - 1.0 <= 1e-12 || bt - 1.0 <= 1e-12) {
    out.lhs = std::numeric_limits<double>::quiet_NaN();
    out.entangled = false;
    out.diagnostic = "degenerate standard form: a~ or b~ equals the vacuum value 1, gamma undefined";
    return out;
  }
  const double g2 = std::sqrt((bt - 1.0) / (at - 1.0));
  out.lhs = at * g2 + bt / g2 - std::abs(c1t) - std::abs(c2t) - (g2 + 1.0 / g2);
  out.entangled = out.lhs < 0.0;
  return out;
}

DuanResult duan_criterion_optimized(const StandardForm& sf, double r_min, double r_max,
                                    int points) {
  if (points < 1 || !(r_max >= r_min)) {
    throw DomainError("duan_criterion_optimized: invalid grid");
  }
  DuanResult best = duan_criterion(sf, r_min, r_min);
  for (int i = 1; i < points; ++i) {
    const double r = r_min + (r_max - r_min) * i / (points - 1);
    DuanResult cand = duan_criterion(sf, r, r);
    if (!cand.diagnostic.empty()) continue;
    if (!best.diagnostic.empty() || cand.lhs < best.lhs) best = cand;
  }
  return best;
}

double log_negativity(const GaussianState& state, LogBase base) {
  const double d = ppt_symplectic_eigenvalues(state).minus;
  const double nats = std::max(0.0, -std::log(2.0 * d));
  return base == LogBase::kBits ? nats / std::log(2.0) : nats;
}

double eof_symmetric(const GaussianState& state) {
  const StandardForm sf = standard_form(state);
  if (std::abs(sf.a - sf.b) > kFormTol * std::max(1.0, sf.a)) {
    throw DomainError(
        "eof_symmetric: state is not symmetric (a != b); the general "
        "entanglement-of-formation prescription is not implemented");
  }
  const double d = ppt_symplectic_eigenvalues(state).minus;
  if (d >= 0.5) return 0.0;
  return f_entropy((d * d + 0.25) / (2.0 * d));
}

double eof_squeezed_thermal(const GaussianState& state) {
  const StandardForm sf = standard_form(state);
  const double scale = std::max({1.0, sf.a, sf.b});
  if (std::abs(sf.c1 + sf.c2) > kFormTol * scale) {
    throw DomainError(
        "eof_squeezed_thermal: standard form does not have c1 = -c2; the "
        "general entanglement-of-formation prescription is not implemented");
  }
  if (ppt_symplectic_eigenvalues(state).minus >= 0.5) return 0.0;
  const double a = sf.a;
  const double b = sf.b;
  const double c = sf.c1;
  const double num = (a + b) * (a * b - c * c + 0.25) -
                     2.0 * c * std::sqrt(uncertainty_determinant(state.cov()));
  const double den = (a + b) * (a + b) - 4.0 * c * c;
  return f_entropy(num / den);
}

double min_conditional_determinant(const Matrix& cov, Side side) {
  require_two_modes(cov, "min_conditional_determinant");
  LocalInvariants inv = local_invariants(cov);
  StandardForm sf = form_of(cov);
  if (side == Side::kBGivenA) {
    std::swap(inv.i1, inv.i2);
    std::swap(sf.a, sf.b);
  }
  const double i1 = inv.i1;
  const double i2 = inv.i2;
  const double i3 = inv.i3;
  const double i4 = inv.i4;
  const double a = sf.a;
  const double b = sf.b;

  // A pure measured subsystem cannot be correlated with the other one.
  if (i2 - 0.25 <= 1e-12) return i1;

  // Branch test written without the division by I3^2 (same inequality).
  const double lhs = (i1 * i2 - i4) * (i1 * i2 - i4);
  const double rhs = (i1 + 4.0 * i4) * (i2 + 0.25) * i3 * i3;
  if (lhs <= rhs) {
    // I3^2 - (I1 - 4 I4)(I2 - 1/4) = u1 u2 / 4 with u_k = a (4 b^2 - 1) - 4 b c_k^2;
    // zero for every pure state, so it is formed from the factors.
    const double u1 = a * (4.0 * b * b - 1.0) - 4.0 * b * sf.c1 * sf.c1;
    const double u2 = a * (4.0 * b * b - 1.0) - 4.0 * b * sf.c2 * sf.c2;
    const double root = 0.5 * std::sqrt(std::max(0.0, u1 * u2));
    const double x = (std::abs(i3) + root) / (2.0 * (i2 - 0.25));
    return x * x;
  }
  // p^2 - 4 I1 I2 I4 = (a b (c1^2 - c2^2))^2
  const double p = i1 * i2 + i4 - i3 * i3;
  return (p - a * b * std::abs(sf.c1 * sf.c1 - sf.c2 * sf.c2)) / (2.0 * i2);
}

double gaussian_discord(const GaussianState& state, Side side) {
  require_two_modes(state, "gaussian_discord");
  const double e_min = min_conditional_determinant(state.cov(), side);
  return f_entropy(std::sqrt(e_min)) - conditional_entropy(state, side);
}

double uncertainty_determinant(const Matrix& cov) {
  detail::require_square_even(cov, "uncertainty_determinant");
  const int n = static_cast<int>(cov.rows() / 2);
  const Eigen::MatrixXcd m =
      cov.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * omega(n).cast<std::complex<double>>();
  return std::max(0.0, m.determinant().real());
}

}  // namespace gaussiana
