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

#include "gaussiana/fock_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaussiana/core.hpp"

namespace gaussiana::fock {

namespace {

void require_modes(int modes, const char* what) {
  if (modes < 1 || modes > 2) {
    throw DimensionError(std::string(what) + ": the Fock oracle supports one or two modes");
  }
}

void require_cutoff(int cutoff) {
  if (cutoff < 2) throw DomainError("Fock cutoff must be at least 2");
}

int dimension(int modes, int cutoff) { return modes == 1 ? cutoff : cutoff * cutoff; }

SparseC lowering(int cutoff) {
  SparseC a(cutoff, cutoff);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int m = 1; m < cutoff; ++m) t.emplace_back(m - 1, m, std::sqrt(static_cast<double>(m)));
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SparseC annihilator(int mode, int modes, int cutoff) {
  return embed(lowering(cutoff), mode, modes, cutoff);
}

SparseC creator(int mode, int modes, int cutoff) {
  return SparseC(annihilator(mode, modes, cutoff).adjoint());
}

// Tr[rho M] for sparse M.
Complex trace_with(const CMatrix& rho, const SparseC& m) {
  Complex total = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseC::InnerIterator it(m, k); it; ++it) total += it.value() * rho(it.col(), it.row());
  }
  return total;
}

double top_population(const FockState& s) {
  double top = 0.0;
  const int dim = static_cast<int>(s.factor.rows());
  for (int idx = 0; idx < dim; ++idx) {
    const int m1 = s.modes == 1 ? idx : idx / s.cutoff;
    const int m2 = s.modes == 1 ? 0 : idx % s.cutoff;
    if (m1 >= s.cutoff - 2 || m2 >= s.cutoff - 2) top += s.factor.row(idx).squaredNorm();
  }
  return top;
}

FockState evolve(const FockState& s, const SparseC& generator) {
  FockState out = s;
  out.factor = expm_multiply(generator, s.factor);
  out.spill = std::max(s.spill, top_population(out));
  return out;
}

void check_mode(const FockState& s, int mode) {
  if (mode < 0 || mode >= s.modes) {
    throw DimensionError("Fock oracle: mode index " + std::to_string(mode) + " out of range");
  }
}

CMatrix normalized(const FockDensity& rho) { return rho.rho / rho.trace(); }

}  // namespace

ModeOps mode_ops(int cutoff) {
  require_cutoff(cutoff);
  ModeOps ops;
  ops.a = CMatrix(lowering(cutoff));
  ops.adag = ops.a.adjoint();
  ops.q = (ops.a + ops.adag) / std::sqrt(2.0);
  ops.p = (ops.a - ops.adag) / Complex(0.0, std::sqrt(2.0));
  return ops;
}

FockDensity FockState::density() const {
  FockDensity d;
  d.cutoff = cutoff;
  d.modes = modes;
  d.rho = factor * factor.adjoint();
  d.tail = tail_estimate(*this);
  return d;
}

CMatrix expm_multiply(const SparseC& g, const CMatrix& v) {
  double norm = 0.0;
  for (int k = 0; k < g.outerSize(); ++k) {
    double col = 0.0;
    for (SparseC::InnerIterator it(g, k); it; ++it) col += std::abs(it.value());
    norm = std::max(norm, col);
  }
  // Per-step norm up to 8 keeps the largest Taylor term below ~1e3.
  const int steps = std::max(1, static_cast<int>(std::ceil(norm / 8.0)));
  const double scale = 1.0 / steps;
  CMatrix acc = v;
  for (int s = 0; s < steps; ++s) {
    CMatrix term = acc;
    for (int k = 1; k <= 200; ++k) {
      term = (g * term) * (scale / k);
      acc += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-18 * std::max(1.0, acc.cwiseAbs().maxCoeff())) break;
    }
  }
  return acc;
}

SparseC embed(const SparseC& op, int mode, int modes, int cutoff) {
  require_modes(modes, "embed");
  if (mode < 0 || mode >= modes) throw DimensionError("embed: mode index out of range");
  if (modes == 1) return op;
  SparseC id(cutoff, cutoff);
  id.setIdentity();
  SparseC out = mode == 0 ? SparseC(Eigen::kroneckerProduct(op, id))
                          : SparseC(Eigen::kroneckerProduct(id, op));
  return out;
}

FockState vacuum(int modes, int cutoff) { return thermal(std::vector<double>(modes, 0.0), cutoff); }

FockState thermal(const std::vector<double>& photons, int cutoff, double prune) {
  const int n = static_cast<int>(photons.size());
  require_modes(n, "thermal");
  require_cutoff(cutoff);
  auto weight = [](double nbar, int m) {
    return std::pow(nbar, m) / std::pow(1.0 + nbar, m + 1);
  };
  const int dim = dimension(n, cutoff);
  std::vector<std::pair<int, double>> kept;
  double total = 0.0;
  for (int idx = 0; idx < dim; ++idx) {
    const int m1 = n == 1 ? idx : idx / cutoff;
    double p = weight(photons[0], m1);
    if (n == 2) p *= weight(photons[1], idx % cutoff);
    if (p > prune) {
      kept.emplace_back(idx, p);
      total += p;
    }
  }
  FockState s;
  s.cutoff = cutoff;
  s.modes = n;
  s.factor = CMatrix::Zero(dim, static_cast<int>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    s.factor(kept[c].first, static_cast<int>(c)) = std::sqrt(kept[c].second);
  }
  s.dropped = std::max(0.0, 1.0 - total);
  return s;
}

FockState displace(const FockState& s, int mode, Complex alpha) {
  check_mode(s, mode);
  const SparseC a = annihilator(mode, s.modes, s.cutoff);
  const SparseC ad = creator(mode, s.modes, s.cutoff);
  return evolve(s, SparseC(alpha * ad - std::conj(alpha) * a));
}

FockState squeeze(const FockState& s, int mode, double r, double psi) {
  check_mode(s, mode);
  const Complex xi = std::polar(r, psi);
  const SparseC a = annihilator(mode, s.modes, s.cutoff);
  const SparseC ad = creator(mode, s.modes, s.cutoff);
  const SparseC a2 = a * a;
  const SparseC ad2 = ad * ad;
  return evolve(s, SparseC(0.5 * (xi * ad2 - std::conj(xi) * a2)));
}

FockState squeeze_two_mode(const FockState& s, double r, double psi) {
  if (s.modes != 2) throw DimensionError("squeeze_two_mode: need a two-mode state");
  const Complex xi = std::polar(r, psi);
  const SparseC ab = annihilator(0, 2, s.cutoff) * annihilator(1, 2, s.cutoff);
  const SparseC adbd = creator(0, 2, s.cutoff) * creator(1, 2, s.cutoff);
  return evolve(s, SparseC(xi * adbd - std::conj(xi) * ab));
}

FockState passive(const FockState& s, const CMatrix& u) {
  if (u.rows() != s.modes || u.cols() != s.modes) {
    throw DimensionError("passive: unitary size does not match the number of modes");
  }
  const CMatrix log_u = u.log();
  const int c = s.cutoff;
  FockState out = s;
  if (s.modes == 1) {
    for (int m = 0; m < c; ++m) out.factor.row(m) *= std::exp(log_u(0, 0) * static_cast<double>(m));
    return out;
  }
  // The generator sum_jk L_jk a_j^+ a_k conserves the total photon number N, so
  // it is exponentiated exactly on each block spanned by |m, N - m>.
  out.factor.setZero();
  for (int total = 0; total <= 2 * c - 2; ++total) {
    const int size = total + 1;
    CMatrix g = CMatrix::Zero(size, size);
    for (int m = 0; m <= total; ++m) {
      const double n1 = m;
      const double n2 = total - m;
      g(m, m) = log_u(0, 0) * n1 + log_u(1, 1) * n2;
      if (m < total) g(m + 1, m) = log_u(0, 1) * std::sqrt((n1 + 1.0) * n2);
      if (m > 0) g(m - 1, m) = log_u(1, 0) * std::sqrt(n1 * (n2 + 1.0));
    }
    const CMatrix e = g.exp();
    const int lo = std::max(0, total - (c - 1));
    const int hi = std::min(total, c - 1);
    for (int row = lo; row <= hi; ++row) {
      for (int col = lo; col <= hi; ++col) {
        out.factor.row(row * c + (total - row)) +=
            e(row, col) * s.factor.row(col * c + (total - col));
      }
    }
  }
  out.spill = std::max(s.spill, top_population(out));
  return out;
}

CMatrix passive_unitary(const Matrix& o) {
  const int n = static_cast<int>(o.rows() / 2);
  CMatrix u(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) u(j, k) = Complex(o(2 * j, 2 * k), -o(2 * j, 2 * k + 1));
  }
  return u;
}

FockState factor_of(const FockDensity& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.rho);
  const double top = std::max(0.0, es.eigenvalues().maxCoeff());
  FockState s;
  s.cutoff = rho.cutoff;
  s.modes = rho.modes;
  std::vector<int> cols;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 1e-15 * top) cols.push_back(i);
  }
  s.factor.resize(rho.rho.rows(), static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    s.factor.col(static_cast<int>(c)) =
        es.eigenvectors().col(cols[c]) * std::sqrt(es.eigenvalues()(cols[c]));
  }
  s.spill = rho.tail / std::max(1, rho.cutoff);
  return s;
}

FockState build_gaussian(const GaussianState& g, int cutoff) {
  const int n = g.modes();
  require_modes(n, "build_gaussian");
  const WilliamsonDecomposition w = williamson(g.cov());
  std::vector<double> photons;
  for (double d : w.eigenvalues) photons.push_back(std::max(0.0, d - 0.5));
  const EulerDecomposition e = euler_decomposition(SymplecticMatrix(w.symplectic, 1e-7));

  FockState s = thermal(photons, cutoff);
  s = passive(s, passive_unitary(e.right));
  for (int k = 0; k < n; ++k) {
    const double r = std::log(e.squeezing[k]);
    if (r != 0.0) s = squeeze(s, k, r, 0.0);
  }
  s = passive(s, passive_unitary(e.left));
  for (int k = 0; k < n; ++k) {
    const Complex alpha(g.mean()(2 * k) / std::sqrt(2.0), g.mean()(2 * k + 1) / std::sqrt(2.0));
    if (alpha != 0.0) s = displace(s, k, alpha);
  }
  return s;
}

Moments cm_of(const FockDensity& rho) {
  require_modes(rho.modes, "cm_of");
  const int n = rho.modes;
  const double tr = rho.trace();
  std::vector<SparseC> quad;
  for (int k = 0; k < n; ++k) {
    const SparseC a = annihilator(k, n, rho.cutoff);
    const SparseC ad = creator(k, n, rho.cutoff);
    quad.emplace_back((a + ad) / std::sqrt(2.0));
    quad.emplace_back((a - ad) / Complex(0.0, std::sqrt(2.0)));
  }
  Moments m{Matrix(2 * n, 2 * n), Vector(2 * n)};
  for (int k = 0; k < 2 * n; ++k) m.mean(k) = trace_with(rho.rho, quad[k]).real() / tr;
  for (int k = 0; k < 2 * n; ++k) {
    for (int l = k; l < 2 * n; ++l) {
      const SparseC anti = quad[k] * quad[l] + quad[l] * quad[k];
      const double v = 0.5 * trace_with(rho.rho, anti).real() / tr - m.mean(k) * m.mean(l);
      m.cov(k, l) = m.cov(l, k) = v;
    }
  }
  return m;
}

double tail_estimate(const FockState& s) {
  return s.dropped + s.cutoff * std::max(s.spill, top_population(s));
}

double entropy_of(const FockDensity& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(normalized(rho), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-300) s -= l * std::log(l);
  }
  return s;
}

FockDensity partial_trace(const FockDensity& rho, int keep) {
  if (rho.modes != 2) throw DimensionError("partial_trace: need a two-mode state");
  if (keep < 0 || keep > 1) throw DimensionError("partial_trace: keep must be 0 or 1");
  const int c = rho.cutoff;
  FockDensity out;
  out.cutoff = c;
  out.modes = 1;
  out.tail = rho.tail;
  out.rho = CMatrix::Zero(c, c);
  for (int i = 0; i < c; ++i) {
    for (int ip = 0; ip < c; ++ip) {
      Complex v = 0.0;
      for (int j = 0; j < c; ++j) {
        v += keep == 0 ? rho.rho(i * c + j, ip * c + j) : rho.rho(j * c + i, j * c + ip);
      }
      out.rho(i, ip) = v;
    }
  }
  return out;
}

FockDensity partial_transpose(const FockDensity& rho, int mode) {
  if (rho.modes != 2) throw DimensionError("partial_transpose: need a two-mode state");
  if (mode < 0 || mode > 1) throw DimensionError("partial_transpose: mode must be 0 or 1");
  const int c = rho.cutoff;
  FockDensity out = rho;
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      for (int ip = 0; ip < c; ++ip) {
        for (int jp = 0; jp < c; ++jp) {
          out.rho(i * c + j, ip * c + jp) = mode == 1 ? rho.rho(i * c + jp, ip * c + j)
                                                      : rho.rho(ip * c + j, i * c + jp);
        }
      }
    }
  }
  return out;
}

double min_eigenvalue(const FockDensity& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(normalized(rho), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

namespace {

double fidelity_from_factor(const CMatrix& psi, const CMatrix& rho2) {
  const CMatrix m = psi.adjoint() * rho2 * psi;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  double root = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) root += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return root * root;
}

}  // namespace

double uhlmann_fidelity(const FockDensity& rho1, const FockDensity& rho2) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(normalized(rho1));
  const double top = es.eigenvalues().maxCoeff();
  std::vector<int> cols;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 1e-15 * top) cols.push_back(i);
  }
  CMatrix psi(es.eigenvectors().rows(), static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    psi.col(static_cast<int>(c)) = es.eigenvectors().col(cols[c]) * std::sqrt(es.eigenvalues()(cols[c]));
  }
  return fidelity_from_factor(psi, normalized(rho2));
}

double uhlmann_fidelity(const FockState& s1, const FockDensity& rho2) {
  return fidelity_from_factor(s1.factor / s1.factor.norm(), normalized(rho2));
}

double overlap(const FockDensity& rho1, const FockDensity& rho2) {
  return (normalized(rho1).cwiseProduct(normalized(rho2).conjugate())).sum().real();
}

Projected project_coherent(const FockDensity& rho, int mode, Complex alpha) {
  if (rho.modes != 2) throw DimensionError("project_coherent: need a two-mode state");
  if (mode < 0 || mode > 1) throw DimensionError("project_coherent: mode must be 0 or 1");
  const int c = rho.cutoff;
  CVector coh(c);
  coh(0) = std::exp(-0.5 * std::norm(alpha));
  for (int m = 1; m < c; ++m) coh(m) = coh(m - 1) * alpha / std::sqrt(static_cast<double>(m));
  const CMatrix r = normalized(rho);
  Projected out;
  out.state.cutoff = c;
  out.state.modes = 1;
  out.state.tail = rho.tail;
  out.state.rho = CMatrix::Zero(c, c);
  for (int j = 0; j < c; ++j) {
    for (int jp = 0; jp < c; ++jp) {
      Complex v = 0.0;
      for (int i = 0; i < c; ++i) {
        for (int ip = 0; ip < c; ++ip) {
          const Complex e = mode == 0 ? r(i * c + j, ip * c + jp) : r(j * c + i, jp * c + ip);
          v += std::conj(coh(i)) * e * coh(ip);
        }
      }
      out.state.rho(j, jp) = v;
    }
  }
  const double p = out.state.trace();
  out.density = p / std::numbers::pi;
  out.state.rho /= p;
  return out;
}

double wigner_trace(const FockDensity& rho, const Vector& x) {
  require_modes(rho.modes, "wigner_trace");
  if (x.size() != 2 * rho.modes) throw DimensionError("wigner_trace: point has the wrong length");
  const int dim = dimension(rho.modes, rho.cutoff);
  SparseC g(dim, dim);
  CVector parity(dim);
  for (int idx = 0; idx < dim; ++idx) {
    const int total = rho.modes == 1 ? idx : idx / rho.cutoff + idx % rho.cutoff;
    parity(idx) = total % 2 == 0 ? 1.0 : -1.0;
  }
  for (int k = 0; k < rho.modes; ++k) {
    const Complex alpha(x(2 * k) / std::sqrt(2.0), x(2 * k + 1) / std::sqrt(2.0));
    g += SparseC(alpha * creator(k, rho.modes, rho.cutoff) -
                 std::conj(alpha) * annihilator(k, rho.modes, rho.cutoff));
  }
  // D^+ rho D has the Wigner function of rho shifted to the origin.
  const CMatrix d = expm_multiply(g, CMatrix::Identity(dim, dim));
  const CMatrix shifted = d.adjoint() * normalized(rho) * d;
  const double value = (shifted.diagonal().cwiseProduct(parity)).sum().real();
  return std::pow(2.0 / std::numbers::pi, rho.modes) * value;
}

Complex symmetrized_moment(const FockDensity& rho, int mode_s, int mode_t, int h, int k) {
  require_modes(rho.modes, "symmetrized_moment");
  if (h < 0 || k < 0 || h + k > 8) throw DomainError("symmetrized_moment: unsupported order");
  const SparseC up = creator(mode_s, rho.modes, rho.cutoff);
  const SparseC down = annihilator(mode_t, rho.modes, rho.cutoff);
  const CMatrix r = normalized(rho);
  const int len = h + k;
  const int dim = dimension(rho.modes, rho.cutoff);
  Complex total = 0.0;
  int words = 0;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    if (std::popcount(mask) != h) continue;
    SparseC prod(dim, dim);
    prod.setIdentity();
    for (int i = 0; i < len; ++i) prod = prod * ((mask >> i) & 1u ? up : down);
    total += trace_with(r, prod);
    ++words;
  }
  return total / static_cast<double>(words);
}

}  // namespace gaussiana::fock
