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

#include "gaussiana/core.hpp"

// Quasi-probability functions of Gaussian states.
//
// wigner() follows the convention in which the integral of W over R^{2n}
// equals 2^n, so that Tr[O1 O2] = (pi/2)^n int W1 W2.
namespace gaussiana {

enum class ChiForm {
  kPlain,  // exp{-1/2 L^T sigma L - i L^T mean}
  kOmega,  // exp{-1/2 L^T Omega sigma Omega^T L - i L^T Omega mean}
};

std::complex<double> characteristic(const GaussianState& state, const Vector& lambda,
                                    ChiForm form = ChiForm::kPlain);

/// exp{-1/2 (X - mean)^T sigma^{-1} (X - mean)} / (pi^n sqrt(det sigma)).
double wigner(const GaussianState& state, const Vector& x);

/// s-ordered quasi-probability: the Gaussian of wigner() with covariance
/// sigma - (s/2) 1. Throws DomainError if s >= 2 lambda_min(sigma).
double wigner_s(const GaussianState& state, const Vector& x, double s);

/// Largest admissible ordering parameter, 2 lambda_min(sigma) (exclusive).
double max_ordering(const GaussianState& state);

/// max(0, (1 - 2 lambda_min(sigma)) / 2).
double nonclassical_depth(const GaussianState& state);

/// Symmetrically ordered moment <[(a_s^+)^h a_t^k]_sym>. Requires h + k <= 4.
std::complex<double> symmetric_moment(const GaussianState& state, int mode_s, int mode_t,
                                      int h, int k);

struct GridAxis {
  int quadrature;  // index into (q1, p1, ..., qn, pn)
  double lo;
  double hi;
};

struct GridPoint {
  double x;
  double y;  // 0 for one-axis grids
  double w;
};

/// Marginal Wigner density on one or two quadrature axes, normalized to unit
/// integral, sampled at `resolution` points per axis (endpoints included).
/// Rows are ordered with x outermost.
std::vector<GridPoint> wigner_grid(const GaussianState& state, const std::vector<GridAxis>& axes,
                                   int resolution);

}  // namespace gaussiana
