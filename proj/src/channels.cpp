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

#include "gaussiana/channels.hpp"

#include <cmath>
#include <string>

namespace gaussiana {

ChannelParams::ChannelParams(double gamma, double photons, std::complex<double> squeezing,
                             double tol)
    : gamma_(gamma), photons_(photons), squeezing_(squeezing) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw PhysicsError("channel: damping rate must be >= 0, got " + std::to_string(gamma));
  }
  if (!std::isfinite(photons) || photons < 0.0) {
    throw PhysicsError("channel: bath photon number must be >= 0, got " +
                       std::to_string(photons));
  }
  if (!std::isfinite(squeezing.real()) || !std::isfinite(squeezing.imag()) ||
      std::norm(squeezing) > photons * (photons + 1.0) + tol) {
    throw PhysicsError("channel: bath squeezing violates |M|^2 <= N(N+1)");
  }
}

Matrix diffusion_matrix(const ChannelParams& p) {
  const double n = 0.5 + p.photons();
  const std::complex<double> m = p.squeezing();
  Matrix s(2, 2);
  s << n + m.real(), m.imag(), m.imag(), n - m.real();
  return s;
}

GaussianState evolve_single(const GaussianState& state, const ChannelParams& p, double t) {
  if (state.modes() != 1) {
    throw DimensionError("evolve_single: expected a single-mode state");
  }
  return evolve_multi(state, {p}, t);
}

GaussianState evolve_multi(const GaussianState& state, const std::vector<ChannelParams>& params,
                           double t) {
  const int n = state.modes();
  if (static_cast<int>(params.size()) != n) {
    throw DimensionError("evolve_multi: " + std::to_string(params.size()) +
                         " channel parameter sets for " + std::to_string(n) + " modes");
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("evolve_multi: time must be >= 0");
  }
  Vector g_half(2 * n);
  Matrix sigma_inf = Matrix::Zero(2 * n, 2 * n);
  for (int h = 0; h < n; ++h) {
    const double g = std::exp(-0.5 * params[h].gamma() * t);
    g_half(2 * h) = g_half(2 * h + 1) = g;
    sigma_inf.block<2, 2>(2 * h, 2 * h) = (1.0 - g * g) * diffusion_matrix(params[h]);
  }
  Matrix cov = g_half.asDiagonal() * state.cov() * g_half.asDiagonal();
  cov += sigma_inf;
  return GaussianState(std::move(cov), g_half.cwiseProduct(state.mean()));
}

GaussianState evolve(const GaussianState& state, int mode, const ChannelParams& p, double t) {
  if (mode < 0 || mode >= state.modes()) {
    throw DimensionError("evolve: mode index " + std::to_string(mode) + " out of range");
  }
  std::vector<ChannelParams> params(state.modes(), ChannelParams::none());
  params[mode] = p;
  return evolve_multi(state, params, t);
}

}  // namespace gaussiana
