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
#include <numbers>

#include <gtest/gtest.h>

#include "gaussiana/core.hpp"
#include "gaussiana/metrics.hpp"
#include "gaussiana/states.hpp"
#include "gaussiana/transforms.hpp"
#include "support/generators.hpp"

namespace gaussiana {
namespace {

using std::numbers::pi;
using testing::Rng;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Total mean photon number: sum over modes of (tr sigma_kk + |mean_k|^2)/2 - 1/2.
double photons(const GaussianState& g) {
  double total = 0.0;
  for (int k = 0; k < g.modes(); ++k) {
    total += 0.5 * (g.block(k, k).trace() + g.mean().segment<2>(2 * k).squaredNorm()) - 0.5;
  }
  return total;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

TEST(Displacement, Examples) {
  const GaussianState th = thermal({0.4});
  const GaussianState same = apply(th, displacement(Vector::Zero(2)), {0});
  EXPECT_EQ(same.cov(), th.cov());
  EXPECT_EQ(same.mean(), th.mean());

  Vector shift(2);
  shift << std::sqrt(2.0), 0.0;
  const GaussianState coh = apply(vacuum(1), displacement(shift), {0});
  EXPECT_NEAR(coh.mean()(0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(coh.mean()(1), 0.0, 1e-15);
  EXPECT_EQ(coh.cov(), vacuum(1).cov());

  Vector lam(4);
  lam << 0.3, -1.1, 2.0, 0.7;
  const GaussianState st = two_mode_squeezed_thermal(0.2, 0.1, 0.3);
  const GaussianState there = apply(st, displacement(lam), {0, 1});
  const GaussianState back = apply(there, displacement(-lam), {0, 1});
  EXPECT_LT((back.mean() - st.mean()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(back.cov(), st.cov());

  EXPECT_THROW(displacement(Vector::Zero(3)), DimensionError);
  EXPECT_THROW(apply(st, displacement(lam), {0}), DimensionError);
}

TEST(PhaseRotation, Examples) {
  EXPECT_LT(max_abs(phase_rotation(0.0).matrix() - Matrix::Identity(2, 2)), 1e-15);
  Matrix quarter(2, 2);
  quarter << 0, 1, -1, 0;
  EXPECT_LT(max_abs(phase_rotation(pi / 2).matrix() - quarter), 1e-15);
  EXPECT_LT(max_abs((phase_rotation(0.9) * phase_rotation(-0.9)).matrix() - Matrix::Identity(2, 2)),
            1e-15);
}

TEST(BeamSplitter, Examples) {
  EXPECT_LT(max_abs(beam_splitter(0.0, 1.3).matrix() - Matrix::Identity(4, 4)), 1e-15);
  const Matrix b = beam_splitter(pi / 4, 0.0).matrix();
  const double h = 1.0 / std::sqrt(2.0);
  Matrix expected(4, 4);
  expected << h, 0, h, 0,  //
      0, h, 0, h,          //
      -h, 0, h, 0,         //
      0, -h, 0, h;
  EXPECT_LT(max_abs(b - expected), 1e-15);
  EXPECT_LT(max_abs(b * b.transpose() - Matrix::Identity(4, 4)), 1e-15);
}

TEST(BeamSplitter, OffDiagonalBlocksCarryRotation) {
  const double phi = 0.6;
  const double theta = 0.35;
  const Matrix b = beam_splitter(phi, theta).matrix();
  const Matrix r = phase_rotation(theta).matrix();
  EXPECT_LT(max_abs(b.topRightCorner(2, 2) - std::sin(phi) * r), 1e-15);
  EXPECT_LT(max_abs(b.bottomLeftCorner(2, 2) + std::sin(phi) * r.transpose()), 1e-15);
}

TEST(BeamSplitter, ConservesPhotonNumber) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const GaussianState g = testing::random_state(rng, 2);
    const SymplecticMatrix b = beam_splitter(rng.uniform(-pi, pi), rng.uniform(-pi, pi));
    EXPECT_NEAR(photons(apply(g, b)), photons(g), 1e-10);
  }
}

TEST(Squeezer, Examples) {
  EXPECT_LT(max_abs(squeezer_single(0.0, 0.4).matrix() - Matrix::Identity(2, 2)), 1e-15);
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = std::exp(0.5);
  diag(1, 1) = std::exp(-0.5);
  EXPECT_LT(max_abs(squeezer_single(0.5, 0.0).matrix() - diag), 1e-14);
  const GaussianState sq = apply(vacuum(1), squeezer_single(0.8, 1.1));
  EXPECT_NEAR(sq.cov().determinant(), 0.25, 1e-14);
}

TEST(Squeezer, NegativeAmplitudeFlipsPhase) {
  for (double r : {0.1, 0.7, 1.4}) {
    for (double psi : {0.0, 0.5, 2.0}) {
      EXPECT_LT(max_abs(squeezer_single(-r, psi).matrix() - squeezer_single(r, psi + pi).matrix()),
                1e-14);
      EXPECT_LT(max_abs(squeezer_two_mode(-r, psi).matrix() -
                        squeezer_two_mode(r, psi + pi).matrix()),
                1e-14);
    }
  }
}

TEST(TwoModeSqueezer, Examples) {
  EXPECT_LT(max_abs(squeezer_two_mode(0.0, 0.3).matrix() - Matrix::Identity(4, 4)), 1e-15);
  const GaussianState out = apply(vacuum(2), squeezer_two_mode(0.6, 0.0));
  EXPECT_LT(max_abs(out.cov() - two_mode_squeezed_thermal(0.6, 0.0, 0.0).cov()), 1e-14);
}

TEST(TwoModeSqueezer, BalancedSplitterFactorizesTwinBeam) {
  for (double r : {0.2, 0.6, 1.1}) {
    const GaussianState out =
        apply(apply(vacuum(2), squeezer_two_mode(r, 0.0)), beam_splitter(pi / 4, 0.0));
    const Matrix plus = apply(vacuum(1), squeezer_single(r, 0.0)).cov();
    const Matrix minus = apply(vacuum(1), squeezer_single(-r, 0.0)).cov();
    EXPECT_LT(max_abs(out.cov() - direct_sum(plus, minus)), 1e-12);
  }
}

TEST(Apply, Examples) {
  const GaussianState st = two_mode_squeezed_thermal(0.3, 0.5, 0.2);
  const GaussianState same = apply(st, SymplecticMatrix(Matrix::Identity(4, 4)));
  EXPECT_EQ(same.cov(), st.cov());

  const GaussianState th = thermal({1.3});
  EXPECT_LT(max_abs(apply(th, phase_rotation(0.77)).cov() - th.cov()), 1e-15);

  // Balanced splitter on opposite squeezed vacua recombines them into a twin beam.
  const double r = 0.45;
  const Matrix a = apply(vacuum(1), squeezer_single(-r, 0.0)).cov();
  const Matrix b = apply(vacuum(1), squeezer_single(r, 0.0)).cov();
  const Matrix bs = beam_splitter(pi / 4, 0.0).matrix();
  const Matrix direct = bs * direct_sum(a, b) * bs.transpose();
  const GaussianState out = apply(GaussianState(direct_sum(a, b)), beam_splitter(pi / 4, 0.0));
  EXPECT_LT(max_abs(out.cov() - direct), 1e-15);
  EXPECT_LT(max_abs(out.cov() - twb(r).cov()), 1e-12);
}

TEST(Apply, EmbedsIntoSelectedModes) {
  const Matrix s = squeezer_single(0.5, 0.3).matrix();
  const Matrix full = embed(s, {1}, 3);
  EXPECT_LT(max_abs(full.block(2, 2, 2, 2) - s), 1e-15);
  EXPECT_LT(max_abs(full.block(0, 0, 2, 2) - Matrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(full.block(4, 4, 2, 2) - Matrix::Identity(2, 2)), 1e-15);

  // Reversed selection swaps the roles of the two modes.
  const Matrix bs = beam_splitter(0.4, 0.2).matrix();
  const Matrix rev = embed(bs, {2, 0}, 3);
  EXPECT_LT(max_abs(rev.block(4, 4, 2, 2) - bs.block(0, 0, 2, 2)), 1e-15);
  EXPECT_LT(max_abs(rev.block(4, 0, 2, 2) - bs.block(0, 2, 2, 2)), 1e-15);
  EXPECT_LT(max_abs(rev.block(0, 4, 2, 2) - bs.block(2, 0, 2, 2)), 1e-15);
  EXPECT_TRUE(is_symplectic(rev, 1e-12));
}

TEST(Apply, Errors) {
  const GaussianState g = vacuum(2);
  EXPECT_THROW(apply(g, squeezer_single(0.1, 0.0), {2}), DimensionError);
  EXPECT_THROW(apply(g, squeezer_single(0.1, 0.0), {0, 1}), DimensionError);
  EXPECT_THROW(apply(g, squeezer_single(0.1, 0.0)), DimensionError);
  EXPECT_THROW(ModeSelection({0, 0}), DimensionError);
  EXPECT_THROW(ModeSelection({-1}), DimensionError);
  EXPECT_THROW(ModeSelection(std::vector<int>{}), DimensionError);
}

TEST(TransformProperty, BuildersAreSymplectic) {
  Rng rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-pi, pi);
    EXPECT_TRUE(is_symplectic(phase_rotation(b).matrix(), 1e-10));
    EXPECT_TRUE(is_symplectic(beam_splitter(a, b).matrix(), 1e-10));
    EXPECT_TRUE(is_symplectic(squeezer_single(a, b).matrix(), 1e-10));
    EXPECT_TRUE(is_symplectic(squeezer_two_mode(a, b).matrix(), 1e-10));
  }
}

TEST(TransformProperty, UnitaryPreservesSpectrumAndPurity) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const GaussianState g = testing::random_state(rng, 2);
    const SymplecticMatrix f = squeezer_two_mode(rng.uniform(0.0, 1.0), rng.uniform(-pi, pi)) *
                               beam_splitter(rng.uniform(-pi, pi), rng.uniform(-pi, pi));
    const GaussianState out = apply(g, f);
    const auto before = symplectic_eigenvalues(g.cov());
    const auto after = symplectic_eigenvalues(out.cov());
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(before[k], after[k], 1e-10 * before[k]);
    EXPECT_NEAR(purity(out), purity(g), 1e-10);
  }
}

TEST(TransformProperty, Composition) {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const GaussianState g = testing::random_state(rng, 2);
    const SymplecticMatrix f1 = squeezer_two_mode(rng.uniform(0.0, 0.8), rng.uniform(-pi, pi));
    const SymplecticMatrix f2 = beam_splitter(rng.uniform(-pi, pi), rng.uniform(-pi, pi));
    const GaussianState twice = apply(apply(g, f1), f2);
    const GaussianState once = apply(g, f2 * f1);
    EXPECT_LT(max_abs(twice.cov() - once.cov()), 1e-10);
    EXPECT_LT((twice.mean() - once.mean()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TransformProperty, PassiveAndActiveDevices) {
  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix b = beam_splitter(rng.uniform(-pi, pi), rng.uniform(-pi, pi)).matrix();
    const Matrix r = phase_rotation(rng.uniform(-pi, pi)).matrix();
    EXPECT_LT(max_abs(b * b.transpose() - Matrix::Identity(4, 4)), 1e-12);
    EXPECT_LT(max_abs(r * r.transpose() - Matrix::Identity(2, 2)), 1e-12);

    const double sq = rng.uniform(0.05, 1.5);
    const SymplecticMatrix s = squeezer_single(sq, rng.uniform(-pi, pi));
    EXPECT_GT(max_abs(s.matrix() * s.matrix().transpose() - Matrix::Identity(2, 2)), 1e-3);
    const EulerDecomposition e = euler_decomposition(s);
    EXPECT_NEAR(e.squeezing[0], std::exp(sq), 1e-9);

    const SymplecticMatrix s2 = squeezer_two_mode(sq, rng.uniform(-pi, pi));
    const EulerDecomposition e2 = euler_decomposition(s2);
    EXPECT_NEAR(e2.squeezing[0], std::exp(sq), 1e-9);
    EXPECT_NEAR(e2.squeezing[1], std::exp(sq), 1e-9);
  }
}

}  // namespace
}  // namespace gaussiana
