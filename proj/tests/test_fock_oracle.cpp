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

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaussiana/fock_oracle.hpp"
#include "gaussiana/states.hpp"
#include "gaussiana/transforms.hpp"
#include "support/generators.hpp"

namespace gaussiana {
namespace {

using fock::CMatrix;
using fock::Complex;
using std::numbers::pi;
using testing::Rng;

template <class M>
double max_abs(const M& m) {
  return m.cwiseAbs().maxCoeff();
}

TEST(FockOps, LadderAlgebra) {
  const int c = 12;
  const fock::ModeOps ops = fock::mode_ops(c);
  const CMatrix comm = ops.a * ops.adag - ops.adag * ops.a;
  // Only the top level sees the truncation.
  EXPECT_LT(max_abs(CMatrix(comm.topLeftCorner(c - 2, c - 2) - CMatrix::Identity(c - 2, c - 2))),
            1e-14);
  EXPECT_NEAR(std::abs(comm(c - 1, c - 1) - Complex(1.0 - c, 0.0)), 0.0, 1e-12);
  const CMatrix q2 = ops.q * ops.q;
  EXPECT_NEAR(q2(0, 0).real(), 0.5, 1e-15);
  EXPECT_LT(max_abs(CMatrix(ops.q - ops.q.adjoint())), 1e-15);
  EXPECT_LT(max_abs(CMatrix(ops.p - ops.p.adjoint())), 1e-15);
  const CMatrix qp = ops.q * ops.p - ops.p * ops.q;
  EXPECT_NEAR(std::abs(qp(3, 3) - Complex(0.0, 1.0)), 0.0, 1e-14);
}

TEST(FockExpm, MatchesDenseExponential) {
  Rng rng(91);
  for (double size : {0.5, 3.0, 30.0}) {
    const int dim = 8;
    std::vector<Eigen::Triplet<Complex>> t;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (rng.uniform(0.0, 1.0) < 0.4) t.emplace_back(i, j, size * rng.complex(1.0) / double(dim));
      }
    }
    fock::SparseC g(dim, dim);
    g.setFromTriplets(t.begin(), t.end());
    // Anti-Hermitian part keeps the result bounded.
    const fock::SparseC h = fock::SparseC(g - fock::SparseC(g.adjoint()));
    CMatrix v(dim, 3);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < 3; ++j) v(i, j) = rng.complex(1.0);
    }
    const CMatrix dense = CMatrix(h).exp() * v;
    EXPECT_LT(max_abs(CMatrix(fock::expm_multiply(h, v) - dense)), 1e-12 * std::max(1.0, size));
  }
}

TEST(FockStates, ThermalTrace) {
  for (double n : {0.2, 1.0, 3.0}) {
    for (int c : {10, 30}) {
      const fock::FockState s = fock::thermal({n}, c, 0.0);
      const double x = n / (1.0 + n);
      EXPECT_GE(s.density().trace(), 1.0 - std::pow(x, c) - 1e-14);
      EXPECT_NEAR(s.density().trace(), 1.0 - std::pow(x, c), 1e-13);
      const fock::Moments m = fock::cm_of(s.density());
      if (c == 30 && n < 1.5) {
        EXPECT_NEAR(m.cov(0, 0), n + 0.5, 1e-6);
      }
    }
  }
  EXPECT_THROW(fock::thermal({0.1}, 1), DomainError);
  EXPECT_THROW(fock::thermal({0.1, 0.1, 0.1}, 5), DimensionError);
}

TEST(FockStates, TwinBeamSchmidtCoefficients) {
  const int c = 30;
  for (double r : {0.3, 0.7}) {
    const fock::FockState s = fock::squeeze_two_mode(fock::vacuum(2, c), r, 0.0);
    const double tail = fock::tail_estimate(s);
    const fock::FockDensity a = fock::partial_trace(s.density(), 0);
    const double t2 = std::tanh(r) * std::tanh(r);
    const double ch2 = std::cosh(r) * std::cosh(r);
    for (int m = 0; m < 8; ++m) {
      EXPECT_NEAR(a.rho(m, m).real(), std::pow(t2, m) / ch2, 1e-10 + 10 * tail);
    }
    // Partial transpose: smallest eigenvalue -sqrt(l0 l1) = -tanh r / cosh^2 r.
    const fock::FockDensity pt = fock::partial_transpose(s.density(), 1);
    EXPECT_NEAR(fock::min_eigenvalue(pt), -std::tanh(r) / ch2, 1e-10 + 10 * tail);
    const fock::FockDensity back = fock::partial_transpose(pt, 1);
    EXPECT_LT(max_abs(CMatrix(back.rho - s.density().rho)), 1e-15);
  }
}

TEST(FockStates, SqueezedVacuumMoments) {
  const int c = 40;
  const fock::FockState s = fock::squeeze(fock::vacuum(1, c), 0, 0.3, 0.0);
  const fock::Moments m = fock::cm_of(s.density());
  EXPECT_LT(max_abs(m.cov - single_mode_general(0.0, 0.3, 0.0, 0.0).cov()),
            1e-10 + 10 * fock::tail_estimate(s));
  EXPECT_LT(m.mean.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(FockStates, VacuumWignerAndMoments) {
  // The displaced parity needs headroom above the displacement.
  const fock::FockDensity v = fock::vacuum(1, 40).density();
  Rng rng(92);
  for (int k = 0; k < 10; ++k) {
    Vector x(2);
    x << rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5);
    EXPECT_NEAR(fock::wigner_trace(v, x), 2.0 / pi * std::exp(-x.squaredNorm()), 1e-10);
  }
  EXPECT_NEAR(fock::symmetrized_moment(v, 0, 0, 1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(fock::entropy_of(v), 0.0, 1e-14);
}

TEST(FockStates, ThermalEntropy) {
  for (double n : {0.3, 1.2}) {
    const fock::FockDensity th = fock::thermal({n}, 60, 0.0).density();
    const double expected = (n + 1) * std::log(n + 1) - n * std::log(n);
    EXPECT_NEAR(fock::entropy_of(th), expected, 1e-8);
  }
}

TEST(FockStates, CoherentProjectionOfProductVacuum) {
  const fock::FockDensity v = fock::vacuum(2, 20).density();
  const Complex alpha(0.4, -0.3);
  const fock::Projected p = fock::project_coherent(v, 0, alpha);
  EXPECT_NEAR(p.density, std::exp(-std::norm(alpha)) / pi, 1e-14);
  const fock::Moments m = fock::cm_of(p.state);
  EXPECT_LT(max_abs(m.cov - vacuum(1).cov()), 1e-13);
  EXPECT_THROW(fock::project_coherent(fock::vacuum(1, 5).density(), 0, alpha), DimensionError);
}

TEST(FockStates, FactorRoundTrip) {
  const fock::FockDensity rho =
      fock::build_gaussian(single_mode_general({0.2, 0.1}, 0.2, 0.3, 0.4), 25).density();
  const fock::FockState f = fock::factor_of(rho);
  EXPECT_LT(max_abs(CMatrix(f.factor * f.factor.adjoint() - rho.rho)), 1e-13);
  // Both paths take square roots of round-off sized eigenvalues of a
  // low-rank rho, worth about 1e-8 here.
  EXPECT_NEAR(fock::uhlmann_fidelity(rho, rho), 1.0, 1e-7);
  EXPECT_NEAR(fock::uhlmann_fidelity(f, rho), 1.0, 1e-7);
  EXPECT_NEAR(fock::overlap(rho, rho), (rho.rho * rho.rho).trace().real() / (rho.trace() * rho.trace()),
              1e-14);
}

TEST(FockStates, PassiveConservesPhotonNumber) {
  const int c = 15;
  const Matrix bs = beam_splitter(0.7, 0.3).matrix();
  const CMatrix u = fock::passive_unitary(bs);
  EXPECT_LT(max_abs(CMatrix(u * u.adjoint() - CMatrix::Identity(2, 2))), 1e-14);
  const fock::FockState in = fock::squeeze_two_mode(fock::vacuum(2, c), 0.2, 0.0);
  const fock::FockState out = fock::passive(in, u);
  auto total_photons = [c](const fock::FockDensity& d) {
    double t = 0.0;
    for (int m1 = 0; m1 < c; ++m1) {
      for (int m2 = 0; m2 < c; ++m2) t += (m1 + m2) * d.rho(m1 * c + m2, m1 * c + m2).real();
    }
    return t;
  };
  EXPECT_NEAR(total_photons(out.density()), total_photons(in.density()), 1e-10);
}

TEST(FockStates, BuiltStatesReproduceCovariance) {
  Rng rng(93);
  for (int trial = 0; trial < 6; ++trial) {
    const GaussianState g = testing::random_state(rng, 1, 0.3, 0.6, 0.6);
    const fock::FockState s = fock::build_gaussian(g, 40);
    const fock::Moments m = fock::cm_of(s.density());
    const double tol = 1e-10 + 10 * fock::tail_estimate(s);
    EXPECT_LT(max_abs(m.cov - g.cov()), tol);
    EXPECT_LT((m.mean - g.mean()).cwiseAbs().maxCoeff(), tol);
  }
  for (int trial = 0; trial < 3; ++trial) {
    const GaussianState g = testing::random_state(rng, 2, 0.2, 0.2, 0.3);
    const fock::FockState s = fock::build_gaussian(g, 20);
    const fock::Moments m = fock::cm_of(s.density());
    const double tol = 1e-10 + 10 * fock::tail_estimate(s);
    EXPECT_LT(max_abs(m.cov - g.cov()), tol);
    EXPECT_LT((m.mean - g.mean()).cwiseAbs().maxCoeff(), tol);
  }
}

TEST(FockStates, Errors) {
  EXPECT_THROW(fock::vacuum(3, 5), DimensionError);
  EXPECT_THROW(fock::vacuum(1, 1), DomainError);
  EXPECT_THROW(fock::squeeze_two_mode(fock::vacuum(1, 5), 0.1, 0.0), DimensionError);
  EXPECT_THROW(fock::displace(fock::vacuum(1, 5), 1, 0.1), DimensionError);
  EXPECT_THROW(fock::partial_trace(fock::vacuum(1, 5).density(), 0), DimensionError);
  EXPECT_THROW(fock::partial_transpose(fock::vacuum(2, 5).density(), 2), DimensionError);
  EXPECT_THROW(fock::embed(fock::SparseC(5, 5), 2, 2, 5), DimensionError);
  EXPECT_THROW(fock::build_gaussian(vacuum(3), 5), DimensionError);
}

}  // namespace
}  // namespace gaussiana
