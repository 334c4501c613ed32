// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file verify.hpp
 * @brief Verification suite: every closed form against the quadrature oracle.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mh/model.hpp"
#include "mh/mueller.hpp"
#include "mh/oracle/quadrature.hpp"
#include "mh/solver.hpp"
#include "mh/spectral.hpp"

namespace mh {

struct CheckResult {
  std::string name;
  double measured_error;
  double tolerance;
  bool pass;
};

struct VerifyOptions {
  double omega0 = 1.0;
  std::vector<double> lambdas{0.1, 0.3};
  std::vector<double> q_list{0.5, 0.4};
  std::size_t nodes = oracle::kDefaultNodes;
  double truncation_tol = kDefaultTruncationTol;
  /// Interaction tolerance used for couplings above 0.4, where the
  /// integrands are most anisotropic.
  double stress_interaction_tol = 1e-6;
  /// Perturbs every closed-form value by this relative amount (negative control).
  double tamper = 0.0;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace detail {

inline std::string tag(const std::string& name, double lambda) {
  return name + "[lambda=" + fmt_double(lambda) + "]";
}

inline std::string tag(const std::string& name, double lambda, double q) {
  return name + "[lambda=" + fmt_double(lambda) + ",q=" + fmt_double(q) + "]";
}

inline std::string tag(const std::string& name, double lambda, double q, double xi_p) {
  return name + "[lambda=" + fmt_double(lambda) + ",q=" + fmt_double(q) +
         ",xi_p=" + fmt_double(xi_p) + "]";
}

inline double rel_err(double measured, double expected) {
  return std::abs(measured - expected) / std::max(std::abs(expected), 1e-300);
}

}  // namespace detail

/// Runs the oracle checks for each coupling in `opt.lambdas` (each must be
/// <= 0.45) and each q in `opt.q_list`.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  auto check = [&](std::string name, double err, double tol) {
    out.push_back({std::move(name), err, tol, err <= tol});
  };
  const double t = 1.0 + opt.tamper;
  double worst_shift = 0.0;
  auto track = [&](const oracle::OracleValue& v) {
    worst_shift = std::max(worst_shift, v.refined_shift);
    return v.value;
  };

  for (double lambda : opt.lambdas) {
    const ModelParams p{opt.omega0, lambda};
    const auto f = derive_frequencies(p);
    const auto rule = oracle::default_rule(p, opt.nodes);
    const double interaction_tol = lambda > 0.4 ? opt.stress_interaction_tol : 1e-7;
    using detail::tag;

    check(tag("wavefunction_norm", lambda),
          std::abs(track(oracle::wavefunction_norm_numeric(p, rule)) - 1.0), 1e-9);
    check(tag("density_norm", lambda),
          std::abs(track(oracle::density_moment_numeric(p, rule, [](double) { return 1.0; })) -
                   1.0),
          1e-10);
    check(tag("density_second_moment", lambda),
          detail::rel_err(
              track(oracle::density_moment_numeric(p, rule, [](double x) { return x * x; })),
              t * 0.5 / f.omega_s),
          1e-10);

    const auto h = oracle::hamiltonian_expectation_numeric(p, rule);
    const double e_ex = t * exact_energy(p).total;
    check(tag("hamiltonian_expectation", lambda), detail::rel_err(track(h.total), e_ex), 1e-8);
    check(tag("virial", lambda),
          std::abs(h.kinetic.value - (h.external.value + h.interaction.value)), 1e-7);

    {
      const auto spectrum = occupation_spectrum(f.xi, opt.truncation_tol);
      double worst = 0.0;
      for (double x : linspace(-3.0, 3.0, 7)) {
        for (double xp : linspace(-3.0, 3.0, 7)) {
          const double numeric = track(oracle::one_matrix_numeric(p, x, xp, rule));
          worst = std::max(worst,
                           std::abs(numeric - t * one_matrix(spectrum, f.omega_bar, 1.0, x, xp)));
        }
      }
      check(tag("one_matrix_lattice", lambda), worst, 1e-8);
    }

    {
      double worst = 0.0;
      for (double xi_p : {0.0, 0.1, 0.3, 0.6}) {
        const auto s = occupation_spectrum(xi_p, opt.truncation_tol);
        const double wp = omega_p_from_constraint(f.omega_s, xi_p);
        for (double x : {0.0, 0.5, 1.3}) {
          worst = std::max(worst, std::abs(t * density_from_spectrum(s, wp, x) - density(p, x)));
        }
      }
      check(tag("isospectral_density", lambda), worst, 1e-8);
    }

    for (double q : opt.q_list) {
      const auto spec = KernelSpec::sum_one(q);
      for (double xi_p : {f.xi, 0.05}) {
        const auto state = spec.state(f.omega_s, xi_p);
        const double closed = t * energy_parametric(p, spec, xi_p).interaction;
        check(tag("kernel_interaction", lambda, q, xi_p),
              detail::rel_err(track(oracle::kernel_interaction_numeric(p, spec, state, rule)),
                              closed),
              interaction_tol);
        check(tag("kernel_integral", lambda, q, xi_p),
              std::abs(track(oracle::kernel_integral_numeric(p, spec, state, rule)) -
                       (2.0 - t * kernel_normalization(spec, xi_p))),
              1e-9);
        check(tag("spectral_kinetic", lambda, q, xi_p),
              std::abs(track(oracle::spectral_kinetic_numeric(f.omega_s, xi_p, rule)) -
                       t * kinetic_parametric(f.omega_s, xi_p)),
              1e-10);
      }
      const auto bf = oracle::brute_force_minimize(p, spec);
      check(tag("brute_force_root", lambda, q),
            std::abs(bf.xi_p - t * solve_xi_p(p, q).xi_p), 1e-6);
    }

    {
      const auto spec = KernelSpec::equal_powers(0.6);
      const auto state = spec.state(f.omega_s, f.xi);
      check(tag("equal_powers_interaction", lambda, 0.6),
            detail::rel_err(track(oracle::kernel_interaction_numeric(p, spec, state, rule)),
                            t * energy_parametric(p, spec, f.xi).interaction),
            interaction_tol);
    }
  }
  check("node_doubling_stability", worst_shift, oracle::kStabilityThreshold);
  return out;
}

}  // namespace mh
