// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file mueller.hpp
 * @brief Muller-type pair-density ansatz and its closed-form energies.
 *
 * The pair density is replaced by the kernel
 *
 *   K_p(x1, x2) = 2 n1(x1) n1(x2) - gamma_p^q(x1, x2) gamma_p^r(x1, x2),
 *
 * where n1 is the exact density and gamma_p the parametric one-matrix. With
 * the density held exact, only the kinetic and interaction energies depend
 * on xi_p:
 *
 *   E_p = (w_s/2) ((1 + xi_p)/(1 - xi_p))²  +  w0²/(2 w_s)
 *         - (L w0²/(2 w_s)) [2 - (1 - xi_p^q)(1 - xi_p^{1-q})/(1 + xi_p)].
 *
 * The fixed-occupation energy E_{q,r} is this expression at xi_p = xi(L),
 * where (xi_p, w_p) = (xi, w_bar); it has no separate entry point.
 */

#pragma once

#include <cmath>
#include <string>

#include "mh/errors.hpp"
#include "mh/model.hpp"
#include "mh/spectral.hpp"

namespace mh {

/// xi_p closer to 1 than this is rejected instead of returning inf.
inline constexpr double kXiUpperGuard = 1.0 - 1e-9;

enum class KernelFamily {
  sum_one,       ///< q + r = 1; kernel integrates to 1
  equal_powers,  ///< q = r; kernel normalization violated unless q = 1/2
};

struct KernelSpec {
  double q = 0.5;
  double r = 0.5;
  KernelFamily family = KernelFamily::sum_one;

  static KernelSpec sum_one(double q) { return {q, 1.0 - q, KernelFamily::sum_one}; }
  static KernelSpec equal_powers(double q) { return {q, q, KernelFamily::equal_powers}; }

  [[nodiscard]] ParametricState state(double omega_s, double xi_p) const {
    return ParametricState::from_constraint(omega_s, xi_p, q, r);
  }
};

inline void validate(const KernelSpec& spec) {
  if (!(spec.q > 0.0 && spec.q < 1.0)) {
    throw DomainError("kernel power q must lie in (0, 1), got " + detail::fmt_double(spec.q));
  }
  switch (spec.family) {
    case KernelFamily::sum_one:
      if (std::abs(spec.q + spec.r - 1.0) > 1e-15) {
        throw DomainError("sum_one kernel requires q + r = 1");
      }
      break;
    case KernelFamily::equal_powers:
      if (spec.q != spec.r) throw DomainError("equal_powers kernel requires q = r");
      break;
  }
}

inline void check_xi_p(double xi_p) {
  if (!(xi_p >= 0.0) || !(xi_p < kXiUpperGuard)) {
    throw DomainError("parametric ratio xi_p must lie in [0, 1 - 1e-9), got " +
                      detail::fmt_double(xi_p));
  }
}

/// (1 - xi)^{q+r} / (1 - xi^{q+r}) = sum_n P_n^{q+r}; 1 at xi = 0 and whenever q + r = 1.
inline double kernel_normalization(const KernelSpec& spec, double xi) {
  if (!(xi >= 0.0) || !(xi < 1.0)) {
    throw DomainError("occupation ratio xi must lie in [0, 1), got " + detail::fmt_double(xi));
  }
  if (xi == 0.0) return 1.0;
  const double s = spec.q + spec.r;
  return std::pow(1.0 - xi, s) / (1.0 - std::pow(xi, s));
}

/// 2 - (1 - xi^q)(1 - xi^{1-q})/(1 + xi); symmetric under q <-> 1 - q.
inline double interaction_bracket(double q, double xi) {
  return 2.0 - (1.0 - std::pow(xi, q)) * (1.0 - std::pow(xi, 1.0 - q)) / (1.0 + xi);
}

/// Bracket for independent powers (q, r):
///   2 - (1 - xi^q)(1 - xi^r)(1 - xi)^{q+r+1} / ((1 + xi)(1 - xi^{q+r})²),
/// which reduces to interaction_bracket when q + r = 1.
inline double interaction_bracket(double q, double r, double xi) {
  if (xi == 0.0) return 1.0;
  const double s = q + r;
  const double denom_root = 1.0 - std::pow(xi, s);
  return 2.0 - (1.0 - std::pow(xi, q)) * (1.0 - std::pow(xi, r)) * std::pow(1.0 - xi, s + 1.0) /
                   ((1.0 + xi) * denom_root * denom_root);
}

inline double interaction_bracket(const KernelSpec& spec, double xi) {
  return spec.family == KernelFamily::sum_one ? interaction_bracket(spec.q, xi)
                                              : interaction_bracket(spec.q, spec.r, xi);
}

/// Two-particle kinetic energy of the parametric one-matrix,
/// (w_s/2)((1 + xi_p)/(1 - xi_p))²; w_s/2 at xi_p = 0 and unbounded above.
inline double kinetic_parametric(double omega_s, double xi_p) {
  check_xi_p(xi_p);
  const double ratio = (1.0 + xi_p) / (1.0 - xi_p);
  return 0.5 * omega_s * ratio * ratio;
}

inline EnergyBreakdown energy_parametric(const ModelParams& params, const KernelSpec& spec,
                                         double xi_p, Branch branch = Branch::repulsive) {
  validate(params, branch, kMaxCoupling);
  validate(spec);
  check_xi_p(xi_p);
  const double ws = derive_frequencies(params).omega_s;
  const double scale = 0.5 * params.omega0 * params.omega0 / ws;
  return make_breakdown(kinetic_parametric(ws, xi_p), scale,
                        -params.lambda * scale * interaction_bracket(spec, xi_p));
}

/// K_p(x1, x2). Powers come from `spec`; (xi_p, w_p) from `state`. Passing
/// (xi(L), w_bar) evaluates the fixed-occupation kernel instead.
inline double kernel_eval(const KernelSpec& spec, const ModelParams& params,
                          const ParametricState& state, double x1, double x2,
                          double truncation_tol = kDefaultTruncationTol) {
  validate(spec);
  if (state.q != spec.q || state.r != spec.r) {
    throw DomainError("parametric state powers do not match the kernel spec");
  }
  const auto spectrum = occupation_spectrum(state.xi_p, truncation_tol);
  const double gq = one_matrix(spectrum, state.omega_p, spec.q, x1, x2);
  const double gr = spec.r == spec.q ? gq : one_matrix(spectrum, state.omega_p, spec.r, x1, x2);
  return 2.0 * density(params, x1) * density(params, x2) - gq * gr;
}

}  // namespace mh
