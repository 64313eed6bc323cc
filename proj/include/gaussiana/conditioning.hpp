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

#include "gaussiana/core.hpp"

// Gaussian measurements on one mode of a multimode state.
namespace gaussiana {

/// Measurement covariance matrix and observed outcome (a phase-space point).
struct GaussianPovm {
  Matrix sigma_m;
  Vector outcome;

  /// Throws PhysicsError unless sigma_m + i/2 omega >= 0.
  void validate(double tol = kPhysicalTol) const;
};

/// Heterodyne (coherent-state projection) with outcome alpha:
/// sigma_m = 1/2, X = sqrt(2) (Re alpha, Im alpha).
GaussianPovm heterodyne_povm(std::complex<double> alpha);

/// Finite-squeezing homodyne of the quadrature rotated by `angle`:
/// sigma_m = R^T diag(s, 1/(4 s)) R. Throws DomainError for s <= 0.
GaussianPovm homodyne_povm(double angle, double outcome, double s = 1e-6);

struct Conditioned {
  GaussianState state;  // remaining n - 1 modes, original order
  double density;       // outcome density per unit of d^2 X / 2 (i.e. d^2 alpha)
};

/// Condition on the outcome of `povm` on `mode`.
Conditioned condition(const GaussianState& state, int mode, const GaussianPovm& povm);

/// Density of the outcome alone, without building the conditional state.
double outcome_density(const GaussianState& state, int mode, const GaussianPovm& povm);

}  // namespace gaussiana
