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

#include "gaussiana/transforms.hpp"

#include <cmath>
#include <set>
#include <string>

namespace gaussiana {

namespace {

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

Eigen::Matrix2d squeeze_block(double r, double psi) {
  Eigen::Matrix2d m;
  m << std::cos(psi), std::sin(psi), std::sin(psi), -std::cos(psi);
  return std::sinh(r) * m;
}

}  // namespace

ModeSelection::ModeSelection(std::initializer_list<int> indices)
    : ModeSelection(std::vector<int>(indices)) {}

ModeSelection::ModeSelection(std::vector<int> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) {
    throw DimensionError("mode selection is empty");
  }
  std::set<int> seen;
  for (int i : indices_) {
    if (i < 0) throw DimensionError("negative mode index " + std::to_string(i));
    if (!seen.insert(i).second) {
      throw DimensionError("duplicate mode index " + std::to_string(i));
    }
  }
}

void ModeSelection::check(int n_modes) const {
  for (int i : indices_) {
    if (i >= n_modes) {
      throw DimensionError("mode index " + std::to_string(i) + " out of range for " +
                           std::to_string(n_modes) + " modes");
    }
  }
}

GaussianUnitary displacement(const Vector& shift) {
  if (shift.size() == 0 || shift.size() % 2 != 0) {
    throw DimensionError("displacement vector must have even positive length");
  }
  return {SymplecticMatrix(Matrix::Identity(shift.size(), shift.size())), shift};
}

SymplecticMatrix phase_rotation(double theta) { return SymplecticMatrix(rotation(theta)); }

SymplecticMatrix beam_splitter(double phi, double theta) {
  Matrix s(4, 4);
  const Eigen::Matrix2d r = rotation(theta);
  s.topLeftCorner(2, 2) = std::cos(phi) * Eigen::Matrix2d::Identity();
  s.topRightCorner(2, 2) = std::sin(phi) * r;
  s.bottomLeftCorner(2, 2) = -std::sin(phi) * r.transpose();
  s.bottomRightCorner(2, 2) = std::cos(phi) * Eigen::Matrix2d::Identity();
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix squeezer_single(double r, double psi) {
  return SymplecticMatrix(std::cosh(r) * Eigen::Matrix2d::Identity() + squeeze_block(r, psi));
}

SymplecticMatrix squeezer_two_mode(double r, double psi) {
  Matrix s(4, 4);
  const Eigen::Matrix2d off = squeeze_block(r, psi);
  s.topLeftCorner(2, 2) = std::cosh(r) * Eigen::Matrix2d::Identity();
  s.topRightCorner(2, 2) = off;
  s.bottomLeftCorner(2, 2) = off;
  s.bottomRightCorner(2, 2) = std::cosh(r) * Eigen::Matrix2d::Identity();
  return SymplecticMatrix(std::move(s));
}

Matrix embed(const Matrix& f, const ModeSelection& modes, int n_modes) {
  modes.check(n_modes);
  if (f.rows() != 2 * modes.size() || f.cols() != 2 * modes.size()) {
    throw DimensionError("matrix of size " + std::to_string(f.rows()) + " does not act on " +
                         std::to_string(modes.size()) + " modes");
  }
  Matrix full = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const auto& idx = modes.indices();
  for (int a = 0; a < modes.size(); ++a) {
    for (int b = 0; b < modes.size(); ++b) {
      full.block<2, 2>(2 * idx[a], 2 * idx[b]) = f.block<2, 2>(2 * a, 2 * b);
    }
  }
  return full;
}

GaussianState apply(const GaussianState& state, const SymplecticMatrix& f,
                    const Vector& shift, const ModeSelection& modes) {
  const int n = state.modes();
  const Matrix full = embed(f.matrix(), modes, n);
  if (shift.size() != f.matrix().rows()) {
    throw DimensionError("displacement length does not match the selected modes");
  }
  Vector d = Vector::Zero(2 * n);
  const auto& idx = modes.indices();
  for (int a = 0; a < modes.size(); ++a) {
    d.segment<2>(2 * idx[a]) = shift.segment<2>(2 * a);
  }
  return GaussianState(full * state.cov() * full.transpose(), full * state.mean() + d);
}

GaussianState apply(const GaussianState& state, const SymplecticMatrix& f,
                    const ModeSelection& modes) {
  return apply(state, f, Vector::Zero(f.matrix().rows()), modes);
}

GaussianState apply(const GaussianState& state, const GaussianUnitary& u,
                    const ModeSelection& modes) {
  return apply(state, u.matrix, u.shift, modes);
}

GaussianState apply(const GaussianState& state, const SymplecticMatrix& f) {
  if (f.modes() != state.modes()) {
    throw DimensionError("symplectic matrix acts on " + std::to_string(f.modes()) +
                         " modes, state has " + std::to_string(state.modes()));
  }
  const Matrix& m = f.matrix();
  return GaussianState(m * state.cov() * m.transpose(), m * state.mean());
}

}  // namespace gaussiana
