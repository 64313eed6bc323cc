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

#include "gaussiana/conditioning.hpp"
#include "gaussiana/fock_oracle.hpp"
#include "gaussiana/metrics.hpp"
#include "gaussiana/states.hpp"
#include "support/generators.hpp"
#include "support/quadrature.hpp"

namespace gaussiana {
namespace {

using std::numbers::pi;
using testing::Rng;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Povm, Construction) {
  const GaussianPovm het = heterodyne_povm({0.5, -1.0});
  EXPECT_EQ(het.sigma_m, 0.5 * Matrix::Identity(2, 2));
  EXPECT_NEAR(het.outcome(0), std::sqrt(2.0) * 0.5, 1e-15);
  EXPECT_NEAR(het.outcome(1), -std::sqrt(2.0), 1e-15);
  EXPECT_NO_THROW(het.validate());

  const GaussianPovm hom = homodyne_povm(0.0, 0.7, 1e-3);
  EXPECT_NEAR(hom.sigma_m(0, 0), 1e-3, 1e-18);
  EXPECT_NEAR(hom.sigma_m(1, 1), 250.0, 1e-12);
  EXPECT_NEAR(hom.outcome(0), 0.7, 1e-15);
  EXPECT_NO_THROW(hom.validate());

  // Rotated by pi/2 the measured quadrature is p.
  const GaussianPovm hp = homodyne_povm(pi / 2, 0.7, 1e-3);
  EXPECT_NEAR(hp.sigma_m(1, 1), 1e-3, 1e-15);
  EXPECT_NEAR(hp.outcome(1), 0.7, 1e-15);
  EXPECT_NEAR(hp.outcome(0), 0.0, 1e-15);

  EXPECT_THROW(homodyne_povm(0.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(homodyne_povm(0.0, 0.0, -1e-3), DomainError);
  GaussianPovm bad{0.2 * Matrix::Identity(2, 2), Vector::Zero(2)};
  EXPECT_THROW(bad.validate(), PhysicsError);
}

TEST(Condition, ProductStateLeavesOtherModeAlone) {
  const GaussianState a = single_mode_general({0.3, 0.1}, 0.4, 0.2, 0.6);
  const GaussianState b = thermal({1.3});
  const Conditioned out = condition(tensor(a, b), 1, heterodyne_povm({0.8, -0.4}));
  EXPECT_LT(max_abs(out.state.cov() - a.cov()), 1e-15);
  EXPECT_LT((out.state.mean() - a.mean()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Condition, HeterodyneOnTwinBeam) {
  for (double r : {0.2, 0.5, 0.8}) {
    const GaussianState tw = twb(r);
    const double a = std::cosh(2 * r) / 2;
    const double c = std::sinh(2 * r) / 2;
    const std::complex<double> alpha(0.4, -0.3);
    const Conditioned out = condition(tw, 1, heterodyne_povm(alpha));
    const double v = a - c * c / (a + 0.5);
    EXPECT_LT(max_abs(out.state.cov() - v * Matrix::Identity(2, 2)), 1e-12);
    EXPECT_NEAR(out.state.cov().determinant(), 0.25, 1e-12);
    // C = diag(c, -c): the mean follows (c / (a + 1/2)) (X_q, -X_p).
    const double k = c / (a + 0.5);
    EXPECT_NEAR(out.state.mean()(0), k * std::sqrt(2.0) * alpha.real(), 1e-14);
    EXPECT_NEAR(out.state.mean()(1), -k * std::sqrt(2.0) * alpha.imag(), 1e-14);
    const double x2 = 2.0 * std::norm(alpha);
    EXPECT_NEAR(out.density, std::exp(-0.5 * x2 / (a + 0.5)) / (pi * (a + 0.5)), 1e-14);
  }
}

TEST(Condition, HeterodyneAgreesWithCoherentProjection) {
  const int cutoff = 30;
  for (double r : {0.3, 0.7}) {
    const fock::FockState fs = fock::squeeze_two_mode(fock::vacuum(2, cutoff), r, 0.0);
    const double tail = fock::tail_estimate(fs);
    const fock::FockDensity rho = fs.density();
    for (std::complex<double> alpha : {std::complex<double>(0.0, 0.0), {0.5, 0.2}, {-0.3, 0.6}}) {
      const Conditioned g = condition(twb(r), 1, heterodyne_povm(alpha));
      const fock::Projected f = fock::project_coherent(rho, 1, alpha);
      const fock::Moments m = fock::cm_of(f.state);
      EXPECT_LT(max_abs(m.cov - g.state.cov()), 1e-4 + 10 * tail);
      EXPECT_LT((m.mean - g.state.mean()).cwiseAbs().maxCoeff(), 1e-4 + 10 * tail);
      EXPECT_NEAR(f.density, g.density, 1e-4 + 10 * tail);
    }
  }
}

TEST(Condition, HomodyneApproachesIdealLimit) {
  const double r = 0.6;
  const GaussianState tw = twb(r);
  const double a = std::cosh(2 * r) / 2;
  const double c = std::sinh(2 * r) / 2;
  const double s1 = 1e-6;
  const double s2 = 1e-8;
  const Matrix v1 = condition(tw, 0, homodyne_povm(0.0, 0.3, s1)).state.cov();
  const Matrix v2 = condition(tw, 0, homodyne_povm(0.0, 0.3, s2)).state.cov();
  // q variance is a - c^2/(a + s): linear in s near zero.
  EXPECT_NEAR(v1(0, 0), a - c * c / (a + s1), 1e-14);
  EXPECT_NEAR(v2(0, 0), a - c * c / (a + s2), 1e-14);
  const double extrapolated = v2(0, 0) + (v2(0, 0) - v1(0, 0)) * s2 / (s1 - s2);
  EXPECT_NEAR(extrapolated, a - c * c / a, 1e-12);
  EXPECT_GT(std::abs(v1(0, 0) - (a - c * c / a)), 1e-8);
  // The conjugate quadrature is left with its marginal variance.
  EXPECT_NEAR(v2(1, 1), a, 1e-6);
}

TEST(Condition, HeterodynesOnDifferentModesCommute) {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const GaussianState g = testing::random_state(rng, 3);
    const GaussianPovm m0 = heterodyne_povm(rng.complex(1.0));
    const GaussianPovm m1 = heterodyne_povm(rng.complex(1.0));
    const Conditioned a1 = condition(g, 0, m0);
    const Conditioned a2 = condition(a1.state, 0, m1);
    const Conditioned b1 = condition(g, 1, m1);
    const Conditioned b2 = condition(b1.state, 0, m0);
    EXPECT_LT(max_abs(a2.state.cov() - b2.state.cov()), 1e-12);
    EXPECT_LT((a2.state.mean() - b2.state.mean()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(a1.density * a2.density, b1.density * b2.density,
                1e-12 * a1.density * a2.density);
  }
}

TEST(Condition, CovarianceIndependentOfOutcome) {
  Rng rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 3);
    const GaussianState g = testing::random_state(rng, n);
    const int mode = rng.integer(0, n - 1);
    const Matrix c1 = condition(g, mode, heterodyne_povm(rng.complex(2.0))).state.cov();
    const Matrix c2 = condition(g, mode, heterodyne_povm(rng.complex(2.0))).state.cov();
    EXPECT_EQ(c1, c2);
    const double angle = rng.uniform(-pi, pi);
    const Matrix h1 = condition(g, mode, homodyne_povm(angle, rng.normal())).state.cov();
    const Matrix h2 = condition(g, mode, homodyne_povm(angle, rng.normal())).state.cov();
    EXPECT_EQ(h1, h2);
  }
}

TEST(Condition, DensityIsNormalized) {
  Rng rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.integer(2, 3);
    const GaussianState g = testing::random_state(rng, n);
    const int mode = rng.integer(0, n - 1);
    GaussianPovm povm = heterodyne_povm(0.0);
    if (trial % 2 == 1) povm = homodyne_povm(rng.uniform(-pi, pi), 0.0, rng.uniform(0.05, 2.0));
    const Matrix spread = g.block(mode, mode) + povm.sigma_m;
    const Vector center = g.mean().segment(2 * mode, 2);
    const double total = testing::integrate_gaussian_like(
        [&](const Vector& x) {
          GaussianPovm at = povm;
          at.outcome = x;
          const double d = condition(g, mode, at).density;
          EXPECT_NEAR(d, outcome_density(g, mode, at), 1e-14 * std::max(1.0, d));
          return 0.5 * d;
        },
        center, spread, 12);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Condition, PureStateAndPureMeasurementStayPure) {
  Rng rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(2, 3);
    const GaussianState g = testing::random_pure_state(rng, n);
    const int mode = rng.integer(0, n - 1);
    const GaussianPovm povm = trial % 2 == 0
                                  ? heterodyne_povm(rng.complex(1.0))
                                  : homodyne_povm(rng.uniform(-pi, pi), rng.normal(),
                                                  rng.uniform(0.1, 3.0));
    const Conditioned out = condition(g, mode, povm);
    EXPECT_NEAR(purity(out.state), 1.0, 1e-10);
    EXPECT_TRUE(is_physical(out.state.cov(), 1e-10));
  }
}

TEST(Condition, LastModeBlockFormula) {
  Rng rng(65);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(2, 4);
    const GaussianState g = testing::random_state(rng, n);
    const GaussianPovm povm = heterodyne_povm(rng.complex(1.0));
    const int m = 2 * (n - 1);
    // sigma = [[B, C], [C^T, A]] with the measured mode last.
    const Matrix b = g.cov().topLeftCorner(m, m);
    const Matrix c = g.cov().topRightCorner(m, 2);
    const Matrix a = g.cov().bottomRightCorner(2, 2);
    const Matrix inv = (a + povm.sigma_m).inverse();
    const Matrix expected_cov = b - c * inv * c.transpose();
    const Vector expected_mean =
        g.mean().head(m) + c * inv * (povm.outcome - g.mean().tail(2));
    const Conditioned out = condition(g, n - 1, povm);
    EXPECT_LT(max_abs(out.state.cov() - expected_cov), 1e-12);
    EXPECT_LT((out.state.mean() - expected_mean).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Condition, Errors) {
  EXPECT_THROW(condition(vacuum(1), 0, heterodyne_povm(0.0)), DimensionError);
  EXPECT_THROW(condition(twb(0.3), 2, heterodyne_povm(0.0)), DimensionError);
  EXPECT_THROW(condition(twb(0.3), -1, heterodyne_povm(0.0)), DimensionError);
  EXPECT_THROW(homodyne_povm(0.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(outcome_density(twb(0.3), 2, heterodyne_povm(0.0)), DimensionError);
}

}  // namespace
}  // namespace gaussiana
