// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file quadrature.hpp
 * @brief Brute-force numerical checks of the closed forms.
 *
 * Everything here integrates the defining expressions on product grids:
 * the wave function itself, the one-matrix as an integral of psi psi*, and
 * the pair-density kernels against the interaction. Hermite functions are
 * evaluated by a separate route from mh/spectral.hpp (unnormalized H_n in
 * long double with log-gamma normalization) so the two can check each
 * other. Each value is recomputed on the refined rule and the shift is
 * reported alongside it.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "mh/errors.hpp"
#include "mh/model.hpp"
#include "mh/mueller.hpp"
#include "mh/numeric.hpp"
#include "mh/oracle/gauss_hermite.hpp"
#include "mh/spectral.hpp"

namespace mh::oracle {

/// Largest coupling the default rules are validated for.
inline constexpr double kOracleMaxCoupling = 0.45;
/// Shift under node doubling above which a value is flagged.
inline constexpr double kStabilityThreshold = 1e-9;

struct OracleValue {
  double value = 0.0;
  double refined_shift = 0.0;  ///< |value(refined rule) - value(rule)|

  [[nodiscard]] bool stable(double threshold = kStabilityThreshold) const {
    return refined_shift <= threshold;
  }
};

inline void validate_oracle(const ModelParams& p) {
  validate(p, Branch::repulsive, kOracleMaxCoupling);
}

/// Evaluates `f(rule)` on the rule and on its refinement.
template <typename F>
OracleValue with_refinement(const QuadratureRule& rule, F&& f) {
  const double coarse = f(rule);
  const double fine = f(rule.refined());
  return {fine, std::abs(fine - coarse)};
}

/// phi_0..phi_{count-1} at x via H_{n+1} = 2y H_n - 2n H_{n-1} in long double.
inline std::vector<double> hermite_functions(std::size_t count, double omega, double x) {
  if (count > 160) throw DomainError("oracle Hermite table limited to 160 functions");
  using real = long double;
  std::vector<double> out(count);
  const real y = std::sqrt(static_cast<real>(omega)) * x;
  const real base = 0.25L * std::log(static_cast<real>(omega) / std::numbers::pi_v<real>) -
                    0.5L * y * y;
  real h_prev = 0.0L;
  real h = 1.0L;
  for (std::size_t n = 0; n < count; ++n) {
    const auto nd = static_cast<real>(n);
    const real log_norm = base - 0.5L * (nd * std::log(2.0L) + std::lgamma(nd + 1.0L));
    out[n] = static_cast<double>(h * std::exp(log_norm));
    const real h_next = 2.0L * y * h - 2.0L * nd * h_prev;
    h_prev = h;
    h = h_next;
  }
  return out;
}

/// Term count for occupations (1 - xi)^p xi^{n p}: until xi^{n p} < 1e-17.
inline std::size_t oracle_terms(double xi, double min_power) {
  if (xi == 0.0) return 1;
  const double n = std::ceil(std::log(1e-17) / (min_power * std::log(xi))) + 1.0;
  return static_cast<std::size_t>(std::clamp(n, 1.0, 160.0));
}

inline double occupation_power(double xi, std::size_t n, double power) {
  if (n == 0) return std::pow(1.0 - xi, power);
  if (xi == 0.0) return 0.0;
  return std::exp(power * (std::log1p(-xi) + static_cast<double>(n) * std::log(xi)));
}

/// gamma(x, x') = integral psi(x, y) psi(x', y) dy.
inline OracleValue one_matrix_numeric(const ModelParams& params, double x, double x_prime,
                                      const QuadratureRule& rule) {
  validate_oracle(params);
  return with_refinement(rule, [&](const QuadratureRule& r) {
    CompensatedSum s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s.add(r.weights[i] * wavefunction(params, x, r.nodes[i]) *
            wavefunction(params, x_prime, r.nodes[i]));
    }
    return s.value();
  });
}

/// Integral of psi² over the plane.
inline OracleValue wavefunction_norm_numeric(const ModelParams& params,
                                             const QuadratureRule& rule) {
  validate_oracle(params);
  return with_refinement(rule, [&](const QuadratureRule& r) {
    CompensatedSum s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = 0; j < r.size(); ++j) {
        const double psi = wavefunction(params, r.nodes[i], r.nodes[j]);
        s.add(r.weights[i] * r.weights[j] * psi * psi);
      }
    }
    return s.value();
  });
}

/// Integral of g(x) against the density, g given per node.
template <typename G>
OracleValue density_moment_numeric(const ModelParams& params, const QuadratureRule& rule, G&& g) {
  validate_oracle(params);
  return with_refinement(rule, [&](const QuadratureRule& r) {
    CompensatedSum s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s.add(r.weights[i] * density(params, r.nodes[i]) * g(r.nodes[i]));
    }
    return s.value();
  });
}

struct HamiltonianExpectation {
  OracleValue kinetic;
  OracleValue external;
  OracleValue interaction;
  OracleValue total;
};

/// <psi|H|psi> on the product grid. Kinetic energy uses 1/2 |grad psi|² with
/// the gradient of the Gaussian exponent taken analytically.
inline HamiltonianExpectation hamiltonian_expectation_numeric(const ModelParams& params,
                                                              const QuadratureRule& rule) {
  validate_oracle(params);
  const auto f = derive_frequencies(params);
  const double a = 0.5 * (f.omega1 + f.omega2);
  const double b = 0.5 * (f.omega1 - f.omega2);
  const double w0sq = params.omega0 * params.omega0;
  auto parts = [&](const QuadratureRule& r) {
    CompensatedSum t, ext, inter;
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = 0; j < r.size(); ++j) {
        const double x1 = r.nodes[i];
        const double x2 = r.nodes[j];
        const double w = r.weights[i] * r.weights[j];
        const double psi = wavefunction(params, x1, x2);
        const double d1 = -(a * x1 + b * x2) * psi;
        const double d2 = -(a * x2 + b * x1) * psi;
        const double rho = w * psi * psi;
        t.add(0.5 * w * (d1 * d1 + d2 * d2));
        ext.add(rho * 0.5 * w0sq * (x1 * x1 + x2 * x2));
        inter.add(-rho * 0.5 * params.lambda * w0sq * (x1 - x2) * (x1 - x2));
      }
    }
    return std::vector<double>{t.value(), ext.value(), inter.value()};
  };
  const auto coarse = parts(rule);
  const auto fine = parts(rule.refined());
  HamiltonianExpectation out;
  out.kinetic = {fine[0], std::abs(fine[0] - coarse[0])};
  out.external = {fine[1], std::abs(fine[1] - coarse[1])};
  out.interaction = {fine[2], std::abs(fine[2] - coarse[2])};
  const double tc = coarse[0] + coarse[1] + coarse[2];
  const double tf = fine[0] + fine[1] + fine[2];
  out.total = {tf, std::abs(tf - tc)};
  return out;
}

/// Values of gamma_p^power on the grid nodes, as a row-major table.
inline std::vector<double> powered_one_matrix_table(const std::vector<std::vector<double>>& phi,
                                                    double xi, double power, std::size_t terms) {
  const std::size_t n = phi.size();
  std::vector<double> occ(terms);
  for (std::size_t k = 0; k < terms; ++k) occ[k] = occupation_power(xi, k, power);
  std::vector<double> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      CompensatedSum s;
      for (std::size_t k = 0; k < terms; ++k) s.add(occ[k] * phi[i][k] * phi[j][k]);
      table[i * n + j] = table[j * n + i] = s.value();
    }
  }
  return table;
}

/// Integral of K_p(x1, x2) times `weight(x1, x2)` over the plane.
template <typename W>
double kernel_moment_on_rule(const ModelParams& params, const KernelSpec& spec,
                             const ParametricState& state, const QuadratureRule& r, W&& weight) {
  const double ws = derive_frequencies(params).omega_s;
  const std::size_t terms = oracle_terms(state.xi_p, std::min(spec.q, spec.r));
  std::vector<std::vector<double>> phi(r.size());
  std::vector<double> n1(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    phi[i] = hermite_functions(terms, state.omega_p, r.nodes[i]);
    n1[i] = std::sqrt(ws / std::numbers::pi) * std::exp(-ws * r.nodes[i] * r.nodes[i]);
  }
  const auto gq = powered_one_matrix_table(phi, state.xi_p, spec.q, terms);
  const auto gr =
      spec.r == spec.q ? gq : powered_one_matrix_table(phi, state.xi_p, spec.r, terms);
  const std::size_t n = r.size();
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double k = 2.0 * n1[i] * n1[j] - gq[i * n + j] * gr[i * n + j];
      s.add(r.weights[i] * r.weights[j] * k * weight(r.nodes[i], r.nodes[j]));
    }
  }
  return s.value();
}

/// Interaction energy of the kernel: integral K_p (-1/2 L w0² (x1 - x2)²).
inline OracleValue kernel_interaction_numeric(const ModelParams& params, const KernelSpec& spec,
                                              const ParametricState& state,
                                              const QuadratureRule& rule) {
  validate_oracle(params);
  validate(spec);
  const double c = -0.5 * params.lambda * params.omega0 * params.omega0;
  return with_refinement(rule, [&](const QuadratureRule& r) {
    return kernel_moment_on_rule(params, spec, state, r,
                                 [&](double x1, double x2) { return c * (x1 - x2) * (x1 - x2); });
  });
}

/// Integral of K_p itself; equals 2 - sum_n P_n^{q+r}.
inline OracleValue kernel_integral_numeric(const ModelParams& params, const KernelSpec& spec,
                                           const ParametricState& state,
                                           const QuadratureRule& rule) {
  validate_oracle(params);
  validate(spec);
  return with_refinement(rule, [&](const QuadratureRule& r) {
    return kernel_moment_on_rule(params, spec, state, r, [](double, double) { return 1.0; });
  });
}

/// Two-particle kinetic energy of the parametric one-matrix:
/// 2 sum_n P_n <phi_n| -1/2 d²/dx² |phi_n>, each matrix element integrated
/// as 1/2 integral (phi_n')² with phi_n' from the ladder relation.
inline OracleValue spectral_kinetic_numeric(double omega_s, double xi_p,
                                            const QuadratureRule& rule) {
  const double omega_p = omega_p_from_constraint(omega_s, xi_p);
  const std::size_t terms = oracle_terms(xi_p, 1.0);
  return with_refinement(rule, [&](const QuadratureRule& r) {
    std::vector<CompensatedSum> elements(terms);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto phi = hermite_functions(terms + 1, omega_p, r.nodes[i]);
      for (std::size_t n = 0; n < terms; ++n) {
        const auto nd = static_cast<double>(n);
        const double lower = n > 0 ? std::sqrt(0.5 * nd) * phi[n - 1] : 0.0;
        const double d = std::sqrt(omega_p) * (lower - std::sqrt(0.5 * (nd + 1.0)) * phi[n + 1]);
        elements[n].add(r.weights[i] * 0.5 * d * d);
      }
    }
    CompensatedSum total;
    for (std::size_t n = 0; n < terms; ++n) {
      total.add(2.0 * occupation_power(xi_p, n, 1.0) * elements[n].value());
    }
    return total.value();
  });
}

struct BruteForceMinimum {
  double xi_p;
  double energy;
};

inline constexpr std::size_t kBruteForceScanPoints = 4096;
inline constexpr double kBruteForceUpper = 0.999;

/// Minimizes the parametric energy over xi_p directly: 4096-point scan of
/// [0, 0.999] followed by golden-section refinement around the best point.
inline BruteForceMinimum brute_force_minimize(const ModelParams& params, const KernelSpec& spec) {
  auto energy = [&](double xi_p) { return energy_parametric(params, spec, xi_p).total; };
  const auto grid = linspace(0.0, kBruteForceUpper, kBruteForceScanPoints);
  std::size_t best = 0;
  double best_e = energy(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double e = energy(grid[i]);
    if (e < best_e) {
      best = i;
      best_e = e;
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  auto m = golden_section_minimize(energy, a, b, 1e-15);
  if (best_e <= m.value) m = {grid[best], best_e};
  return {m.x, m.value};
}

}  // namespace mh::oracle
