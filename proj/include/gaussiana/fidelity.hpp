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

#include "gaussiana/core.hpp"

// Overlap and Uhlmann fidelity of Gaussian states.
namespace gaussiana {

/// Tr[rho1 rho2] = exp{-1/2 d^T (s1 + s2)^{-1} d} / sqrt(det(s1 + s2)),
/// d the difference of the first moments. Any equal number of modes.
double overlap(const GaussianState& a, const GaussianState& b);

/// Single-mode Uhlmann fidelity.
double fidelity_1m(const GaussianState& a, const GaussianState& b);

/// Two-mode Uhlmann fidelity. Throws PhysicsError when the invariant B is
/// negative beyond `tol` (unphysical input).
double fidelity_2m(const GaussianState& a, const GaussianState& b, double tol = 1e-12);

}  // namespace gaussiana
