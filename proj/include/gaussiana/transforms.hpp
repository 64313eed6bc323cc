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

#include <vector>

#include "gaussiana/core.hpp"

// Generators of Gaussian unitaries and their action on states:
//   cov -> F cov F^T,   mean -> F mean + d.
namespace gaussiana {

/// Ordered list of distinct 0-based mode indices.
class ModeSelection {
 public:
  ModeSelection(std::initializer_list<int> indices);
  explicit ModeSelection(std::vector<int> indices);

  /// Throws DimensionError unless every index lies in [0, n_modes).
  void check(int n_modes) const;

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }

 private:
  std::vector<int> indices_;
};

/// Affine symplectic map R -> F R + d on k modes.
struct GaussianUnitary {
  SymplecticMatrix matrix;
  Vector shift;
};

/// Pure displacement by the phase-space vector `shift` (F = identity).
GaussianUnitary displacement(const Vector& shift);

/// Single-mode phase rotation [[cos t, sin t], [-sin t, cos t]].
SymplecticMatrix phase_rotation(double theta);

/// Beam splitter [[cos(phi) 1, sin(phi) R_theta], [-sin(phi) R_theta^T, cos(phi) 1]].
SymplecticMatrix beam_splitter(double phi, double theta);

/// Single-mode squeezer cosh(r) 1 + sinh(r) [[cos psi, sin psi], [sin psi, -cos psi]].
/// Negative r is accepted and equals squeezing |r| at phase psi + pi.
SymplecticMatrix squeezer_single(double r, double psi);

/// Two-mode squeezer [[cosh(r) 1, R], [R, cosh(r) 1]] with R the off-diagonal
/// block of squeezer_single.
SymplecticMatrix squeezer_two_mode(double r, double psi);

/// Embed a 2k x 2k matrix acting on `modes` into the identity on n modes.
Matrix embed(const Matrix& f, const ModeSelection& modes, int n_modes);

GaussianState apply(const GaussianState& state, const SymplecticMatrix& f,
                    const Vector& shift, const ModeSelection& modes);
GaussianState apply(const GaussianState& state, const SymplecticMatrix& f,
                    const ModeSelection& modes);
GaussianState apply(const GaussianState& state, const GaussianUnitary& u,
                    const ModeSelection& modes);

/// Apply a symplectic acting on every mode of the state.
GaussianState apply(const GaussianState& state, const SymplecticMatrix& f);

}  // namespace gaussiana
