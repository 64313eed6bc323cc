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

// Closed-form factories for the standard Gaussian states. Every factory
// builds its covariance matrix directly rather than by composing transforms.
namespace gaussiana {

GaussianState vacuum(int n_modes);

/// Product of thermal states with mean photon numbers N_k >= 0.
GaussianState thermal(const std::vector<double>& photons);

/// Product of coherent states |alpha_k>: mean_k = sqrt(2) (Re, Im) alpha_k.
GaussianState coherent(const std::vector<std::complex<double>>& alpha);

/// Displaced squeezed thermal state D(alpha) S(r e^{i psi}) nu(N) S^+ D^+.
GaussianState single_mode_general(std::complex<double> alpha, double r, double psi,
                                  double photons);

/// Two-mode squeezed thermal state S2(r) [nu(N1) x nu(N2)] S2^+ (real r).
GaussianState two_mode_squeezed_thermal(double r, double photons_a, double photons_b);

/// Twin beam (two-mode squeezed vacuum).
GaussianState twb(double r);

}  // namespace gaussiana
