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

#include "gaussiana/core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

namespace gaussiana {

namespace detail {

void require_square_even(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
  if (m.rows() == 0 || m.rows() % 2 != 0) {
    std::ostringstream os;
    os << what << ": phase-space dimension must be even and positive, got "
       << m.rows();
    throw DimensionError(os.str());
  }
}

Matrix symmetric_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw DomainError("matrix is not positive definite (least eigenvalue " +
                      std::to_string(ev.minCoeff()) + ")");
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace detail

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

// Positive eigenpairs of the Hermitian matrix i * sqrt(cov) Omega sqrt(cov),
// ordered by eigenvalue (descending), ties by the mode holding the largest
// eigenvector component.
struct PositiveSpectrum {
  std::vector<double> values;
  std::vector<Eigen::VectorXcd> vectors;
};

PositiveSpectrum positive_spectrum(const Matrix& cov_sqrt) {
  const int dim = static_cast<int>(cov_sqrt.rows());
  const int n = dim / 2;
  const Matrix k = cov_sqrt * omega(n) * cov_sqrt;
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);

  struct Entry {
    double value;
    int dominant_mode;
    int column;
  };
  std::vector<Entry> entries;
  entries.reserve(n);
  for (int j = n; j < dim; ++j) {
    Eigen::Index arg = 0;
    es.eigenvectors().col(j).cwiseAbs().maxCoeff(&arg);
    entries.push_back({es.eigenvalues()(j), static_cast<int>(arg / 2), j});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    // Values closer than round-off count as ties.
    if (std::abs(a.value - b.value) > 1e-12 * std::max(1.0, std::abs(a.value))) {
      return a.value > b.value;
    }
    return a.dominant_mode < b.dominant_mode;
  });

  PositiveSpectrum out;
  for (const Entry& e : entries) {
    out.values.push_back(e.value);
    out.vectors.emplace_back(es.eigenvectors().col(e.column));
  }
  return out;
}

void check_symmetric(const Matrix& cov) {
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale_of(cov)) {
    throw DomainError("covariance matrix is not symmetric (max asymmetry " +
                      std::to_string(asym) + ")");
  }
}

}  // namespace

Matrix omega(int n_modes) {
  if (n_modes < 1) {
    throw DimensionError("omega: number of modes must be positive");
  }
  Matrix om = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    om(2 * k, 2 * k + 1) = 1.0;
    om(2 * k + 1, 2 * k) = -1.0;
  }
  return om;
}

GaussianState::GaussianState(Matrix cov, Vector mean, double physical_tol)
    : cov_(std::move(cov)), mean_(std::move(mean)) {
  detail::require_square_even(cov_, "GaussianState");
  if (mean_.size() != cov_.rows()) {
    throw DimensionError("GaussianState: mean has length " +
                         std::to_string(mean_.size()) + ", expected " +
                         std::to_string(cov_.rows()));
  }
  if (!cov_.allFinite() || !mean_.allFinite()) {
    throw DomainError("GaussianState: non-finite entries");
  }
  check_symmetric(cov_);
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  if (!is_physical(cov_, physical_tol)) {
    throw PhysicsError(
        "GaussianState: covariance matrix violates the uncertainty relation "
        "(a symplectic eigenvalue is below 1/2)");
  }
}

GaussianState::GaussianState(Matrix cov, double physical_tol)
    : GaussianState(cov, Vector::Zero(cov.rows()), physical_tol) {}

GaussianState GaussianState::reduced(const std::vector<int>& keep) const {
  const int n = modes();
  if (keep.empty()) {
    throw DimensionError("reduced: no modes selected");
  }
  std::vector<int> idx;
  for (int m : keep) {
    if (m < 0 || m >= n) {
      throw DimensionError("reduced: mode index " + std::to_string(m) +
                           " out of range for " + std::to_string(n) + " modes");
    }
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  const int d = static_cast<int>(idx.size());
  Matrix c(d, d);
  Vector mu(d);
  for (int i = 0; i < d; ++i) {
    mu(i) = mean_(idx[i]);
    for (int j = 0; j < d; ++j) c(i, j) = cov_(idx[i], idx[j]);
  }
  return GaussianState(std::move(c), std::move(mu));
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const auto da = a.cov().rows();
  const auto db = b.cov().rows();
  Matrix cov = Matrix::Zero(da + db, da + db);
  cov.topLeftCorner(da, da) = a.cov();
  cov.bottomRightCorner(db, db) = b.cov();
  Vector mean(da + db);
  mean << a.mean(), b.mean();
  return GaussianState(std::move(cov), std::move(mean));
}

SymplecticMatrix::SymplecticMatrix(Matrix mat, double tol) : mat_(std::move(mat)) {
  if (!is_symplectic(mat_, tol)) {
    throw DomainError("matrix is not symplectic within tolerance " + std::to_string(tol));
  }
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  if (rhs.mat_.rows() != mat_.rows()) {
    throw DimensionError("symplectic product: dimension mismatch");
  }
  return SymplecticMatrix(mat_ * rhs.mat_);
}

SymplecticMatrix SymplecticMatrix::transpose() const {
  return SymplecticMatrix(mat_.transpose());
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  // F^{-1} = Omega F^T Omega^T
  const Matrix om = omega(modes());
  return SymplecticMatrix(om * mat_.transpose() * om.transpose());
}

bool is_symplectic(const Matrix& f, double tol) {
  detail::require_square_even(f, "is_symplectic");
  const Matrix om = omega(static_cast<int>(f.rows() / 2));
  return (f * om * f.transpose() - om).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> symplectic_eigenvalues(const Matrix& cov) {
  detail::require_square_even(cov, "symplectic_eigenvalues");
  return positive_spectrum(detail::symmetric_sqrt(cov)).values;
}

bool is_physical(const Matrix& cov, double tol) {
  detail::require_square_even(cov, "is_physical");
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) return false;
  const auto d = symplectic_eigenvalues(cov);
  return *std::min_element(d.begin(), d.end()) >= 0.5 - tol;
}

Matrix WilliamsonDecomposition::diagonal() const {
  const int n = static_cast<int>(eigenvalues.size());
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    w(2 * k, 2 * k) = eigenvalues[k];
    w(2 * k + 1, 2 * k + 1) = eigenvalues[k];
  }
  return w;
}

WilliamsonDecomposition williamson(const Matrix& cov) {
  detail::require_square_even(cov, "williamson");
  const int n = static_cast<int>(cov.rows() / 2);
  const Matrix root = detail::symmetric_sqrt(cov);
  const PositiveSpectrum eig = positive_spectrum(root);

  // An eigenvector v = x + i y of i K with eigenvalue d spans the invariant
  // plane of K = sqrt(cov) Omega sqrt(cov) on which K acts as d * omega in the
  // basis (y, x); |x| = |y| = 1/sqrt(2).
  Matrix orth(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    orth.col(2 * k) = std::sqrt(2.0) * eig.vectors[k].imag();
    orth.col(2 * k + 1) = std::sqrt(2.0) * eig.vectors[k].real();
  }
  Vector inv_root_d(2 * n);
  for (int k = 0; k < n; ++k) {
    inv_root_d(2 * k) = inv_root_d(2 * k + 1) = 1.0 / std::sqrt(eig.values[k]);
  }
  return {root * orth * inv_root_d.asDiagonal(), eig.values};
}

Matrix EulerDecomposition::squeezer() const {
  const int n = static_cast<int>(squeezing.size());
  Matrix k = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    k(2 * j, 2 * j) = squeezing[j];
    k(2 * j + 1, 2 * j + 1) = 1.0 / squeezing[j];
  }
  return k;
}

EulerDecomposition euler_decomposition(const SymplecticMatrix& sf) {
  const Matrix& f = sf.matrix();
  const int dim = static_cast<int>(f.rows());
  const int n = dim / 2;
  const Matrix om_t = omega(n).transpose();

  // Polar decomposition F = P O with P = (F F^T)^{1/2} symmetric symplectic.
  Eigen::SelfAdjointEigenSolver<Matrix> es(f * f.transpose());
  const Vector lambda = es.eigenvalues().cwiseMax(0.0);
  const Matrix& v = es.eigenvectors();
  const Matrix p = v * lambda.cwiseSqrt().asDiagonal() * v.transpose();
  const Matrix p_inv = v * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  const Matrix o_right = p_inv * f;

  // Eigenvectors of P come in pairs (u, Omega^T u) with eigenvalues (s, 1/s).
  // The unit eigenspace is closed under Omega and is split greedily.
  constexpr double kUnitCluster = 1e-10;
  std::vector<int> stretched;
  std::vector<int> cluster;
  for (int j = dim - 1; j >= 0; --j) {
    if (lambda(j) > 1.0 + kUnitCluster) {
      stretched.push_back(j);
    } else if (lambda(j) >= 1.0 - kUnitCluster) {
      cluster.push_back(j);
    }
  }

  Matrix basis(dim, 0);
  std::vector<Vector> us;
  auto project_out = [&](Vector x) {
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.cols() > 0) x -= basis * (basis.transpose() * x);
    }
    return x;
  };
  auto accept = [&](const Vector& u_raw) {
    const Vector u = u_raw.normalized();
    Vector w = project_out(om_t * u);
    w.normalize();
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 2);
    basis.col(basis.cols() - 2) = u;
    basis.col(basis.cols() - 1) = w;
    us.push_back(u);
  };

  for (int j : stretched) {
    if (static_cast<int>(us.size()) == n) break;
    accept(project_out(v.col(j)));
  }
  // Candidates for the unit eigenspace: the q-axes, then the p-axes,
  // projected onto it, so passive matrices decompose with O = 1.
  // Fall back to every eigenvector if round-off misclassified the cluster.
  std::vector<Vector> candidates;
  if (static_cast<int>(cluster.size()) < 2 * (n - static_cast<int>(us.size()))) {
    for (int j = dim - 1; j >= 0; --j) candidates.emplace_back(v.col(j));
  } else {
    Matrix vc(dim, static_cast<int>(cluster.size()));
    for (int c = 0; c < vc.cols(); ++c) vc.col(c) = v.col(cluster[c]);
    for (int parity = 0; parity < 2; ++parity) {
      for (int k = 0; k < n; ++k) {
        candidates.emplace_back(vc * vc.transpose().col(2 * k + parity));
      }
    }
  }
  while (static_cast<int>(us.size()) < n) {
    double best_norm = -1.0;
    Vector best;
    for (const Vector& c : candidates) {
      Vector r = project_out(c);
      const double nr = r.norm();
      if (nr > best_norm + 1e-9) {
        best_norm = nr;
        best = std::move(r);
      }
    }
    accept(best);
  }

  Matrix o_left(dim, dim);
  std::vector<double> s(n);
  for (int k = 0; k < n; ++k) {
    o_left.col(2 * k) = basis.col(2 * k);
    o_left.col(2 * k + 1) = basis.col(2 * k + 1);
    s[k] = std::max(1.0, us[k].dot(p * us[k]));
  }
  return {o_left, s, o_left.transpose() * o_right};
}

}  // namespace gaussiana
