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

// Markovian damping of each mode into an independent Gaussian bath with
// closed-form solution
//   sigma_t = G^{1/2} sigma_0 G^{1/2} + (1 - G) sigma_inf,  X_t = G^{1/2} X_0,
// where G = (+)_h exp(-gamma_h t) 1.
namespace gaussiana {

class ChannelParams {
 public:
  /// Throws PhysicsError for gamma < 0, N < 0 or |M|^2 > N (N + 1) + tol.
  ChannelParams(double gamma, double photons, std::complex<double> squeezing = 0.0,
                double tol = 1e-12);

  double gamma() const { return gamma_; }
  double photons() const { return photons_; }
  std::complex<double> squeezing() const { return squeezing_; }

  /// Identity channel on a mode (gamma = 0, vacuum bath).
  static ChannelParams none() { return ChannelParams(0.0, 0.0); }

 private:
  double gamma_;
  double photons_;
  std::complex<double> squeezing_;
};

/// Asymptotic covariance matrix of a damped mode:
/// [[1/2 + N + Re M, Im M], [Im M, 1/2 + N - Re M]].
Matrix diffusion_matrix(const ChannelParams& p);

GaussianState evolve_single(const GaussianState& state, const ChannelParams& p, double t);

/// One parameter set per mode.
GaussianState evolve_multi(const GaussianState& state, const std::vector<ChannelParams>& params,
                           double t);

/// Damp only `mode`; all other modes are left untouched.
GaussianState evolve(const GaussianState& state, int mode, const ChannelParams& p, double t);

}  // namespace gaussiana
