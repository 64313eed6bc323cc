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

#include "gaussiana/states.hpp"

#include <cmath>
#include <string>

namespace gaussiana {

namespace {

void require_photons(double n, const char* what) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw PhysicsError(std::string(what) + ": mean photon number must be >= 0, got " +
                       std::to_string(n));
  }
}

}  // namespace

GaussianState vacuum(int n_modes) {
  if (n_modes < 1) throw DimensionError("vacuum: number of modes must be positive");
  return GaussianState(0.5 * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState thermal(const std::vector<double>& photons) {
  if (photons.empty()) throw DimensionError("thermal: no modes given");
  const int n = static_cast<int>(photons.size());
  Matrix cov = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    require_photons(photons[k], "thermal");
    cov(2 * k, 2 * k) = cov(2 * k + 1, 2 * k + 1) = 0.5 + photons[k];
  }
  return GaussianState(std::move(cov));
}

GaussianState coherent(const std::vector<std::complex<double>>& alpha) {
  if (alpha.empty()) throw DimensionError("coherent: no modes given");
  const int n = static_cast<int>(alpha.size());
  Vector mean(2 * n);
  for (int k = 0; k < n; ++k) {
    mean(2 * k) = std::sqrt(2.0) * alpha[k].real();
    mean(2 * k + 1) = std::sqrt(2.0) * alpha[k].imag();
  }
  return GaussianState(0.5 * Matrix::Identity(2 * n, 2 * n), std::move(mean));
}

GaussianState single_mode_general(std::complex<double> alpha, double r, double psi,
                                  double photons) {
  require_photons(photons, "single_mode_general");
  const double scale = 0.5 * (1.0 + 2.0 * photons);
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Matrix cov(2, 2);
  // sigma_kk = (1+2N)/2 [cosh 2r - (-1)^k sinh 2r cos psi], k = 1, 2
  cov(0, 0) = scale * (ch + sh * std::cos(psi));
  cov(1, 1) = scale * (ch - sh * std::cos(psi));
  cov(0, 1) = cov(1, 0) = scale * sh * std::sin(psi);
  Vector mean(2);
  mean << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
  return GaussianState(std::move(cov), std::move(mean));
}

GaussianState two_mode_squeezed_thermal(double r, double photons_a, double photons_b) {
  require_photons(photons_a, "two_mode_squeezed_thermal");
  require_photons(photons_b, "two_mode_squeezed_thermal");
  const double total = 1.0 + photons_a + photons_b;
  const double a = total * std::cosh(2.0 * r) + (photons_a - photons_b);
  const double b = total * std::cosh(2.0 * r) - (photons_a - photons_b);
  const double c = total * std::sinh(2.0 * r);
  Matrix cov = Matrix::Zero(4, 4);
  cov(0, 0) = cov(1, 1) = 0.5 * a;
  cov(2, 2) = cov(3, 3) = 0.5 * b;
  cov(0, 2) = cov(2, 0) = 0.5 * c;
  cov(1, 3) = cov(3, 1) = -0.5 * c;
  return GaussianState(std::move(cov));
}

GaussianState twb(double r) { return two_mode_squeezed_thermal(r, 0.0, 0.0); }

}  // namespace gaussiana
