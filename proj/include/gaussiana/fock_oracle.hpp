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

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "gaussiana/core.hpp"

// Brute-force reference implementation in a truncated number basis, used to
// cross-check the covariance-matrix formulas. Supports one and two modes; the
// two-mode basis index is m1 * cutoff + m2.
namespace gaussiana::fock {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseC = Eigen::SparseMatrix<Complex>;

struct ModeOps {
  CMatrix a;
  CMatrix adag;
  CMatrix q;  // (a + a^+) / sqrt(2)
  CMatrix p;  // (a - a^+) / (i sqrt(2))
};

ModeOps mode_ops(int cutoff);

/// Density matrix in the truncated basis. `tail` estimates the weight lost to
/// truncation and scales test tolerances.
struct FockDensity {
  int cutoff = 0;
  int modes = 0;
  CMatrix rho;
  double tail = 0.0;

  double trace() const { return rho.trace().real(); }
};

/// rho = factor factor^+, kept in factored form so that unitaries act on a
/// few columns instead of the full matrix.
struct FockState {
  int cutoff = 0;
  int modes = 0;
  CMatrix factor;
  double dropped = 0.0;  // thermal weight left out of the columns
  double spill = 0.0;    // largest top-level population seen while building

  FockDensity density() const;
};

/// exp(G) V for a sparse generator G, by scaled Taylor series.
CMatrix expm_multiply(const SparseC& g, const CMatrix& v);

/// Sparse single-mode operator embedded on `mode` of `modes` modes.
SparseC embed(const SparseC& op, int mode, int modes, int cutoff);

FockState vacuum(int modes, int cutoff);

/// Product of thermal states; columns with weight below `prune` are dropped.
FockState thermal(const std::vector<double>& photons, int cutoff, double prune = 1e-18);

/// D(alpha) = exp(alpha a^+ - alpha^* a) on `mode`.
FockState displace(const FockState& s, int mode, Complex alpha);

/// S(xi) = exp(1/2 (xi a^+2 - xi^* a^2)), xi = r e^{i psi}.
FockState squeeze(const FockState& s, int mode, double r, double psi);

/// S2(xi) = exp(xi a^+ b^+ - xi^* a b) on a two-mode state.
FockState squeeze_two_mode(const FockState& s, double r, double psi);

/// Passive unitary with U^+ a_j U = sum_k u_jk a_k. Applied exactly on each
/// fixed total photon number block, then truncated.
FockState passive(const FockState& s, const CMatrix& u);

/// u = X - iY for an orthogonal symplectic matrix with 2x2 blocks [[X, Y], [-Y, X]].
CMatrix passive_unitary(const Matrix& o);

/// Factor a density matrix (eigendecomposition), dropping negligible weights.
FockState factor_of(const FockDensity& rho);

/// Fock representation of an arbitrary one- or two-mode Gaussian state, built
/// from its Williamson and Euler decompositions.
FockState build_gaussian(const GaussianState& g, int cutoff);

/// Covariance matrix and first moments, normalized by the trace.
struct Moments {
  Matrix cov;
  Vector mean;
};
Moments cm_of(const FockDensity& rho);

/// Truncation estimate: dropped thermal weight plus cutoff times the largest
/// population of the two highest levels of any mode, over every build stage.
double tail_estimate(const FockState& s);

/// -Tr[rho ln rho] of the trace-normalized matrix.
double entropy_of(const FockDensity& rho);

FockDensity partial_trace(const FockDensity& rho, int keep);

FockDensity partial_transpose(const FockDensity& rho, int mode);

double min_eigenvalue(const FockDensity& rho);

/// (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 with both states trace-normalized.
double uhlmann_fidelity(const FockDensity& rho1, const FockDensity& rho2);
double uhlmann_fidelity(const FockState& s1, const FockDensity& rho2);

/// Tr[rho1 rho2] of the trace-normalized matrices.
double overlap(const FockDensity& rho1, const FockDensity& rho2);

struct Projected {
  FockDensity state;  // normalized conditional state of the other mode
  double density;     // Tr[<alpha| rho |alpha>] / pi, per d^2 alpha
};

/// Project `mode` of a two-mode state onto the coherent state |alpha>.
Projected project_coherent(const FockDensity& rho, int mode, Complex alpha);

/// (2/pi)^n Tr[rho D(X) Parity D^+(X)] at the phase-space point X.
double wigner_trace(const FockDensity& rho, const Vector& x);

/// Average over all orderings of h copies of a_s^+ and k copies of a_t.
Complex symmetrized_moment(const FockDensity& rho, int mode_s, int mode_t, int h, int k);

}  // namespace gaussiana::fock
