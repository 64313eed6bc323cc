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

#include "gaussiana/phasespace.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include <Eigen/Eigenvalues>

namespace gaussiana {

namespace {

using cd = std::complex<double>;

void require_point(const GaussianState& state, const Vector& x, const char* what) {
  if (x.size() != 2 * state.modes()) {
    throw DimensionError(std::string(what) + ": point has length " + std::to_string(x.size()) +
                         ", expected " + std::to_string(2 * state.modes()));
  }
}

// Normalized Gaussian density times pi^{-k/2} 2^{k/2}, i.e. the wigner() form
// exp(-q/2) / (pi^{k/2} sqrt det).
double gaussian_form(const Matrix& cov, const Vector& diff) {
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw DomainError("covariance matrix is not positive definite");
  }
  const double q = diff.dot(llt.solve(diff));
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double k = static_cast<double>(diff.size());
  return std::exp(-0.5 * q - 0.5 * log_det - 0.5 * k * std::log(std::numbers::pi));
}

double min_eigenvalue(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

// E[prod_i L_i] for jointly Gaussian complex linear forms L_i = c_i^T X.
cd gaussian_product(const std::vector<Eigen::VectorXcd>& forms, const Eigen::VectorXcd& mean,
                    const Eigen::MatrixXcd& cov, std::vector<int> idx) {
  if (idx.empty()) return 1.0;
  const int first = idx.front();
  idx.erase(idx.begin());
  cd total = forms[first].cwiseProduct(mean).sum() * gaussian_product(forms, mean, cov, idx);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    std::vector<int> rest = idx;
    rest.erase(rest.begin() + static_cast<long>(j));
    const cd c = forms[first].transpose() * cov * forms[idx[j]];
    total += c * gaussian_product(forms, mean, cov, rest);
  }
  return total;
}

}  // namespace

std::complex<double> characteristic(const GaussianState& state, const Vector& lambda,
                                    ChiForm form) {
  require_point(state, lambda, "characteristic");
  Vector l = lambda;
  if (form == ChiForm::kOmega) l = omega(state.modes()).transpose() * lambda;
  return std::exp(cd(-0.5 * l.dot(state.cov() * l), -l.dot(state.mean())));
}

double wigner(const GaussianState& state, const Vector& x) {
  require_point(state, x, "wigner");
  return gaussian_form(state.cov(), x - state.mean());
}

double max_ordering(const GaussianState& state) { return 2.0 * min_eigenvalue(state.cov()); }

double wigner_s(const GaussianState& state, const Vector& x, double s) {
  require_point(state, x, "wigner_s");
  if (s == 0.0) return wigner(state, x);
  const double bound = max_ordering(state);
  if (!(s < bound)) {
    throw DomainError("wigner_s: ordering parameter s = " + std::to_string(s) +
                      " must be below 2 lambda_min(sigma) = " + std::to_string(bound));
  }
  const int dim = 2 * state.modes();
  return gaussian_form(state.cov() - 0.5 * s * Matrix::Identity(dim, dim), x - state.mean());
}

double nonclassical_depth(const GaussianState& state) {
  return std::max(0.0, 0.5 * (1.0 - 2.0 * min_eigenvalue(state.cov())));
}

std::complex<double> symmetric_moment(const GaussianState& state, int mode_s, int mode_t, int h,
                                      int k) {
  const int n = state.modes();
  if (mode_s < 0 || mode_s >= n || mode_t < 0 || mode_t >= n) {
    throw DimensionError("symmetric_moment: mode index out of range");
  }
  if (h < 0 || k < 0 || h + k > 4) {
    throw DomainError("symmetric_moment: orders must satisfy h, k >= 0 and h + k <= 4");
  }
  // alpha_j = (x_j + i y_j) / sqrt(2).
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd conj_s = Eigen::VectorXcd::Zero(2 * n);
  conj_s(2 * mode_s) = r;
  conj_s(2 * mode_s + 1) = cd(0.0, -r);
  Eigen::VectorXcd plain_t = Eigen::VectorXcd::Zero(2 * n);
  plain_t(2 * mode_t) = r;
  plain_t(2 * mode_t + 1) = cd(0.0, r);

  std::vector<Eigen::VectorXcd> forms;
  for (int i = 0; i < h; ++i) forms.push_back(conj_s);
  for (int i = 0; i < k; ++i) forms.push_back(plain_t);
  std::vector<int> idx(forms.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  return gaussian_product(forms, state.mean().cast<cd>(), state.cov().cast<cd>(), idx);
}

std::vector<GridPoint> wigner_grid(const GaussianState& state, const std::vector<GridAxis>& axes,
                                   int resolution) {
  if (axes.empty() || axes.size() > 2) {
    throw DimensionError("wigner_grid: select one or two quadrature axes");
  }
  if (resolution < 2) {
    throw DomainError("wigner_grid: resolution must be at least 2");
  }
  const int dim = 2 * state.modes();
  std::set<int> seen;
  for (const GridAxis& a : axes) {
    if (a.quadrature < 0 || a.quadrature >= dim) {
      throw DimensionError("wigner_grid: quadrature index " + std::to_string(a.quadrature) +
                           " out of range");
    }
    if (!seen.insert(a.quadrature).second) {
      throw DimensionError("wigner_grid: repeated quadrature axis");
    }
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.hi > a.lo)) {
      throw DomainError("wigner_grid: axis range must satisfy lo < hi");
    }
  }
  const int k = static_cast<int>(axes.size());
  Matrix cov(k, k);
  Vector mean(k);
  for (int i = 0; i < k; ++i) {
    mean(i) = state.mean()(axes[i].quadrature);
    for (int j = 0; j < k; ++j) cov(i, j) = state.cov()(axes[i].quadrature, axes[j].quadrature);
  }
  // gaussian_form integrates to 2^{k/2}.
  const double norm = std::pow(2.0, -0.5 * k);
  auto coord = [resolution](const GridAxis& a, int i) {
    return a.lo + (a.hi - a.lo) * static_cast<double>(i) / (resolution - 1);
  };

  std::vector<GridPoint> rows;
  const int ny = k == 2 ? resolution : 1;
  rows.reserve(static_cast<std::size_t>(resolution) * ny);
  Vector p(k);
  for (int i = 0; i < resolution; ++i) {
    p(0) = coord(axes[0], i);
    for (int j = 0; j < ny; ++j) {
      double y = 0.0;
      if (k == 2) p(1) = y = coord(axes[1], j);
      rows.push_back({p(0), y, norm * gaussian_form(cov, p - mean)});
    }
  }
  return rows;
}

}  // namespace gaussiana
