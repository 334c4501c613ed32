// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "mh/diagnostics.hpp"
#include "mh/info.hpp"
#include "mh/numeric.hpp"
#include "mh/spectral.hpp"

namespace {

constexpr double kXi03 = 0.013004689310986745;

TEST(Purity, Values) {
  EXPECT_EQ(mh::purity(0.0), 1.0);
  EXPECT_NEAR(mh::purity(kXi03), 0.97432452297958834, 1e-16);
  EXPECT_NEAR(mh::purity(0.5), 1.0 / 3.0, 1e-16);
  EXPECT_THROW(mh::purity(1.0), mh::DomainError);
  EXPECT_THROW(mh::purity(-1e-3), mh::DomainError);
}

TEST(Purity, MatchesOccupationSeries) {
  for (double xi : {0.01, 0.3, 0.8}) {
    const auto s = mh::occupation_spectrum(xi);
    mh::CompensatedSum sum;
    for (double w : s.weights) sum.add(w * w);
    EXPECT_NEAR(sum.value(), mh::purity(xi), 1e-14);
  }
}

TEST(LinearEntropy, ComplementsPurity) {
  for (double xi : mh::linspace(0.0, 0.99, 100)) {
    EXPECT_NEAR(mh::linear_entropy(xi) + mh::purity(xi), 1.0, 1e-15);
  }
  EXPECT_NEAR(mh::linear_entropy(1e-20), 2e-20, 1e-35);
}

TEST(QuasiparticleWeight, Values) {
  EXPECT_NEAR(mh::quasiparticle_weight(kXi03), 0.97415974332210180, 1e-16);
  const auto s = mh::occupation_spectrum(kXi03);
  EXPECT_NEAR(mh::quasiparticle_weight(kXi03), s.weights[0] - s.weights[1], 1e-16);
  const auto r = mh::entropy_report(0.2);
  EXPECT_EQ(r.xi, 0.2);
  EXPECT_EQ(r.purity, mh::purity(0.2));
  EXPECT_EQ(r.quasiparticle_weight, mh::quasiparticle_weight(0.2));
}

TEST(Duality, Values) {
  EXPECT_NEAR(mh::dual_coupling(0.3), -0.75, 1e-15);
  EXPECT_THROW(mh::dual_coupling(0.0), mh::DomainError);
  EXPECT_THROW(mh::dual_coupling(0.5), mh::DomainError);
}

TEST(Duality, PreservesSpectrum) {
  for (double lambda : mh::linspace(0.01, 0.49, 49)) {
    const double la = mh::dual_coupling(lambda);
    const double xi = mh::xi_of_lambda(lambda);
    const double xia = mh::xi_of_lambda(la);
    EXPECT_NEAR(xia, xi, 1e-14 * std::max(xi, 1e-3)) << lambda;
    EXPECT_NEAR(mh::linear_entropy(xia), mh::linear_entropy(xi), 1e-14) << lambda;
  }
}

TEST(EntropyOrdering, FlipsAtCrossing) {
  for (double q : {0.3, 0.4}) {
    const double l0 = mh::find_crossing({1.0, 0.0}, q);
    EXPECT_EQ(mh::entropy_comparison({1.0, 0.5 * l0}, q).ordering,
              mh::EntropyOrdering::parametric_larger);
    EXPECT_EQ(mh::entropy_comparison({1.0, 0.5 * (l0 + 0.4999)}, q).ordering,
              mh::EntropyOrdering::exact_larger);
    EXPECT_NEAR(mh::entropy_crossing({1.0, 0.0}, q), l0, 1e-9);
  }
  EXPECT_THROW(mh::entropy_crossing({1.0, 0.0}, 0.5), mh::SolverError);
}

TEST(EntropyOrdering, SymmetricPowersCoincide) {
  const auto c = mh::entropy_comparison({1.0, 0.3}, 0.5);
  EXPECT_NEAR(c.linear_entropy_parametric, c.linear_entropy_exact, 1e-15);
}

}  // namespace
