// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mh/mueller.hpp"
#include "mh/oracle/quadrature.hpp"
#include "mh/verify.hpp"

namespace {

using mh::ModelParams;
namespace oracle = mh::oracle;

TEST(GaussHermite, Moments) {
  const auto g = oracle::gauss_hermite(64);
  double s0 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double t2 = g.nodes[i] * g.nodes[i];
    s0 += g.weights[i];
    s2 += g.weights[i] * t2;
    s4 += g.weights[i] * t2 * t2;
  }
  const double sp = std::sqrt(std::numbers::pi);
  EXPECT_NEAR(s0, sp, 1e-12);
  EXPECT_NEAR(s2, sp / 2, 1e-12);
  EXPECT_NEAR(s4, 3 * sp / 4, 1e-12);
  for (std::size_t i = 1; i < g.nodes.size(); ++i) EXPECT_LT(g.nodes[i], g.nodes[i - 1]);
  EXPECT_THROW(oracle::gauss_hermite(0), mh::DomainError);
}

TEST(GaussHermite, MappedRuleIntegratesGaussians) {
  const auto r = oracle::gauss_hermite_mapped(96, 0.4);
  for (double a : {0.3, 0.8, 1.5}) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::exp(-a * r.nodes[i] * r.nodes[i]);
    EXPECT_NEAR(s, std::sqrt(std::numbers::pi / a), 1e-12) << a;
  }
  EXPECT_EQ(r.refined().size(), 192U);
  EXPECT_EQ(oracle::uniform_trapezoid(6.0, 101).refined().size(), 201U);
}

TEST(Oracle, WavefunctionNormAndDensity) {
  for (double lambda : {0.0, 0.1, 0.3, 0.45}) {
    const ModelParams p{1.0, lambda};
    const auto rule = oracle::default_rule(p);
    const auto norm = oracle::wavefunction_norm_numeric(p, rule);
    EXPECT_NEAR(norm.value, 1.0, 1e-12);
    EXPECT_TRUE(norm.stable());
    const auto n0 = oracle::density_moment_numeric(p, rule, [](double) { return 1.0; });
    EXPECT_NEAR(n0.value, 1.0, 1e-12);
    const double ws = mh::derive_frequencies(p).omega_s;
    const auto n2 = oracle::density_moment_numeric(p, rule, [](double x) { return x * x; });
    EXPECT_NEAR(n2.value * 2 * ws, 1.0, 1e-12);
  }
}

TEST(Oracle, HamiltonianExpectationMatchesExact) {
  for (double lambda : {0.1, 0.3, 0.45}) {
    const ModelParams p{1.3, lambda};
    const auto h = oracle::hamiltonian_expectation_numeric(p, oracle::default_rule(p));
    const auto ex = mh::exact_energy(p);
    EXPECT_NEAR(h.total.value, ex.total, 1e-10 * ex.total);
    EXPECT_NEAR(h.kinetic.value, ex.kinetic, 1e-10 * ex.total);
    EXPECT_NEAR(h.external.value, ex.external, 1e-10 * ex.total);
    EXPECT_NEAR(h.interaction.value, ex.interaction, 1e-10 * ex.total);
    // All potentials are quadratic, so T = V.
    EXPECT_NEAR(h.kinetic.value, h.external.value + h.interaction.value, 1e-10);
    EXPECT_TRUE(h.total.stable());
  }
}

TEST(Oracle, TrapezoidAgreesWithGaussHermite) {
  const ModelParams p{1.0, 0.3};
  const auto gh = oracle::hamiltonian_expectation_numeric(p, oracle::default_rule(p));
  const auto tr = oracle::hamiltonian_expectation_numeric(p, oracle::trapezoid_rule(p, 201));
  EXPECT_NEAR(gh.total.value, tr.total.value, 1e-10);
  EXPECT_NEAR(oracle::one_matrix_numeric(p, 0.4, -0.2, oracle::trapezoid_rule(p, 201)).value,
              oracle::one_matrix_numeric(p, 0.4, -0.2, oracle::default_rule(p)).value, 1e-10);
}

TEST(Oracle, HermiteFunctionsLowOrders) {
  const double w = 0.7, x = 0.9;
  const auto phi = oracle::hermite_functions(3, w, x);
  const double g = std::pow(w / std::numbers::pi, 0.25) * std::exp(-0.5 * w * x * x);
  const double y = std::sqrt(w) * x;
  EXPECT_NEAR(phi[0], g, 4e-16);
  EXPECT_NEAR(phi[1], std::sqrt(2.0) * y * g, 4e-16);
  EXPECT_NEAR(phi[2], (2 * y * y - 1) / std::sqrt(2.0) * g, 1e-15);
  EXPECT_THROW(oracle::hermite_functions(161, w, x), mh::DomainError);
}

TEST(Oracle, SpectralKinetic) {
  for (double xi_p : {0.0, 0.013, 0.05, 0.3}) {
    const double ws = 0.774851773445586;
    const auto rule = oracle::gauss_hermite_mapped(96, 0.25);
    const auto t = oracle::spectral_kinetic_numeric(ws, xi_p, rule);
    EXPECT_NEAR(t.value, mh::kinetic_parametric(ws, xi_p), 1e-11) << xi_p;
  }
}

TEST(Oracle, KernelInteractionEquivalence) {
  for (double lambda : {0.1, 0.3}) {
    const ModelParams p{1.0, lambda};
    const auto f = mh::derive_frequencies(p);
    const auto rule = oracle::default_rule(p);
    for (double q : {0.5, 0.4}) {
      for (double xi_p : {f.xi, 0.05}) {
        const auto spec = mh::KernelSpec::sum_one(q);
        const auto v = oracle::kernel_interaction_numeric(p, spec, spec.state(f.omega_s, xi_p), rule);
        const double closed = mh::energy_parametric(p, spec, xi_p).interaction;
        EXPECT_NEAR(v.value, closed, 1e-9) << lambda << " " << q << " " << xi_p;
        EXPECT_TRUE(v.stable());
      }
    }
  }
}

TEST(Oracle, Guards) {
  EXPECT_THROW(oracle::wavefunction_norm_numeric({1.0, 0.46}, oracle::gauss_hermite_mapped(8, 0.5)),
               mh::DomainError);
}

TEST(BruteForce, NoCouplingMinimumAtZero) {
  const auto bf = oracle::brute_force_minimize({1.0, 0.0}, mh::KernelSpec::sum_one(0.4));
  EXPECT_EQ(bf.xi_p, 0.0);
  EXPECT_NEAR(bf.energy, 1.0, 1e-15);
}

TEST(Verify, DefaultPasses) {
  const auto checks = mh::run_verification({});
  EXPECT_GT(checks.size(), 20U);
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << " " << c.measured_error;
}

TEST(Verify, TamperFails) {
  mh::VerifyOptions opt;
  opt.tamper = 1e-6;
  EXPECT_FALSE(mh::all_passed(mh::run_verification(opt)));
}

}  // namespace
