// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file model.hpp
 * @brief Exact ground state of two harmonically coupled particles in a
 *        one-dimensional harmonic trap (Moshinsky/harmonium model).
 *
 *   H = -1/2 (d²/dx1² + d²/dx2²) + 1/2 w0² (x1² + x2²) - 1/2 L w0² (x1 - x2)²
 *
 * Centre-of-mass and relative coordinates decouple with frequencies
 * w1 = w0 and w2 = w0 sqrt(1 - 2L). L > 0 is repulsive, L < 0 attractive,
 * and the system is bound only for L < 1/2. Hartree atomic units throughout.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "mh/errors.hpp"
#include "mh/numeric.hpp"

namespace mh {

/// Coupling at which w2 vanishes and the relative motion unbinds.
inline constexpr double kStabilityBound = 0.5;
/// Largest coupling accepted by energy functionals and the variational solver.
inline constexpr double kMaxCoupling = 0.4999;

/// Energy-type operations reject attractive couplings unless asked not to.
enum class Branch { repulsive, allow_attractive };

struct ModelParams {
  double omega0 = 1.0;  ///< confinement frequency, > 0
  double lambda = 0.0;  ///< dimensionless coupling, < 1/2
};

struct DerivedFrequencies {
  double omega1;     ///< centre-of-mass frequency, = w0
  double omega2;     ///< relative-motion frequency, = w0 sqrt(1 - 2L)
  double omega_s;    ///< harmonic mean 2 w1 w2 / (w1 + w2); width of the density
  double omega_bar;  ///< geometric mean sqrt(w1 w2); natural-orbital frequency
  double z;          ///< signed Schmidt ratio, <= 0 for repulsion
  double xi;         ///< occupation ratio z², in [0, 1)
};

struct EnergyBreakdown {
  double kinetic = 0.0;
  double external = 0.0;
  double interaction = 0.0;
  double total = 0.0;
};

inline EnergyBreakdown make_breakdown(double kinetic, double external, double interaction) {
  return {kinetic, external, interaction, kinetic + external + interaction};
}

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

/// Throws DomainError unless w0 > 0 and L lies below the stability bound
/// (and below `max_lambda`). Attractive couplings need Branch::allow_attractive.
inline void validate(const ModelParams& p, Branch branch = Branch::allow_attractive,
                     double max_lambda = kStabilityBound) {
  if (!(p.omega0 > 0.0) || !std::isfinite(p.omega0)) {
    throw DomainError("omega0 must be positive and finite, got " + detail::fmt_double(p.omega0));
  }
  if (!std::isfinite(p.lambda) || p.lambda >= kStabilityBound) {
    throw DomainError("coupling lambda=" + detail::fmt_double(p.lambda) +
                      " violates the stability bound lambda < 0.5 (omega2 would be imaginary)");
  }
  if (p.lambda > max_lambda) {
    throw DomainError("coupling lambda=" + detail::fmt_double(p.lambda) +
                      " exceeds the computational window lambda <= " +
                      detail::fmt_double(max_lambda));
  }
  if (branch == Branch::repulsive && p.lambda < 0.0) {
    throw DomainError("attractive coupling lambda=" + detail::fmt_double(p.lambda) +
                      " rejected; pass Branch::allow_attractive to opt in");
  }
}

/// Occupation ratio xi(L) = [(1 - s)/(1 + s)]², s = (1 - 2L)^{1/4}.
inline double xi_of_lambda(double lambda) {
  if (!(lambda < kStabilityBound)) {
    throw DomainError("xi(lambda) requires lambda < 0.5 for stability, got " +
                      detail::fmt_double(lambda));
  }
  const double s = std::pow(1.0 - 2.0 * lambda, 0.25);
  // 1 - s = 2L / ((1 + s)(1 + s²)) avoids cancellation near L = 0.
  const double one_minus_s = 2.0 * lambda / ((1.0 + s) * (1.0 + s * s));
  const double ratio = one_minus_s / (1.0 + s);
  return ratio * ratio;
}

inline DerivedFrequencies derive_frequencies(const ModelParams& p) {
  validate(p);
  const double root = std::sqrt(1.0 - 2.0 * p.lambda);
  const double w1 = p.omega0;
  const double w2 = p.omega0 * root;
  const double ws = 2.0 * w1 * w2 / (w1 + w2);
  const double wbar = std::sqrt(w1 * w2);
  // sqrt(w1) - sqrt(w2) = (w1 - w2)/(sqrt(w1) + sqrt(w2)), w1 - w2 = 2 L w0/(1 + root)
  const double sum_roots = std::sqrt(w1) + std::sqrt(w2);
  const double diff_roots = (2.0 * p.lambda * p.omega0 / (1.0 + root)) / sum_roots;
  const double z = -diff_roots / sum_roots;
  return {w1, w2, ws, wbar, z, xi_of_lambda(p.lambda)};
}

/// The three terms of the exact energy: kinetic (w1 + w2)/4, external
/// w0²/(2 ws) and interaction -(L w0²/(2 ws))(2 - ws/w1). Their sum is
/// (w1 + w2)/2, the virial-consistent ground-state energy.
inline EnergyBreakdown exact_energy(const ModelParams& p, Branch branch = Branch::repulsive) {
  validate(p, branch);
  const auto f = derive_frequencies(p);
  const double w0sq = p.omega0 * p.omega0;
  return make_breakdown(0.25 * (f.omega1 + f.omega2), 0.5 * w0sq / f.omega_s,
                        -0.5 * p.lambda * w0sq / f.omega_s * (2.0 - f.omega_s / f.omega1));
}

/// Ground-state amplitude psi(x1, x2); real and symmetric.
inline double wavefunction(const ModelParams& p, double x1, double x2) {
  const auto f = derive_frequencies(p);
  const double norm = std::pow(f.omega1 * f.omega2 / (std::numbers::pi * std::numbers::pi), 0.25);
  return norm * std::exp(-0.25 * (x1 * x1 + x2 * x2) * (f.omega1 + f.omega2) -
                         0.5 * x1 * x2 * (f.omega1 - f.omega2));
}

/// Single-particle probability density (ws/pi)^{1/2} exp(-ws x²), normalized to 1.
inline double density(const ModelParams& p, double x) {
  const double ws = derive_frequencies(p).omega_s;
  return std::sqrt(ws / std::numbers::pi) * std::exp(-ws * x * x);
}

struct EffectivePotential {
  double value;              ///< V_s(x)
  double chemical_potential; ///< mu = (w1 + w2)² / (4 w2)
  double offset;             ///< mu - ws/2, the constant part of V_s
};

/// Kohn-Sham potential whose single orbital sqrt(n1) reproduces the exact
/// density with eigenvalue mu.
inline EffectivePotential effective_potential(const ModelParams& p, double x) {
  const auto f = derive_frequencies(p);
  const double mu = (f.omega1 + f.omega2) * (f.omega1 + f.omega2) / (4.0 * f.omega2);
  const double offset = mu - 0.5 * f.omega_s;
  return {0.5 * f.omega_s * f.omega_s * x * x + offset, mu, offset};
}

struct HartreeFockResult {
  double omega_hf;
  EnergyBreakdown energy;
};

/// Product-state energy with both particles in a Gaussian orbital of
/// frequency `omega`: w/2 + w0²/(2w) - L w0²/(2w).
inline EnergyBreakdown hartree_fock_energy(const ModelParams& p, double omega) {
  const double w0sq = p.omega0 * p.omega0;
  return make_breakdown(0.5 * omega, 0.5 * w0sq / omega, -0.5 * p.lambda * w0sq / omega);
}

inline void validate_hf(const ModelParams& p, Branch branch) {
  if (!(p.omega0 > 0.0) || !std::isfinite(p.omega0)) {
    throw DomainError("omega0 must be positive and finite, got " + detail::fmt_double(p.omega0));
  }
  if (!(p.lambda < 1.0)) {
    throw DomainError("Hartree-Fock orbital is bound only for lambda < 1, got " +
                      detail::fmt_double(p.lambda));
  }
  if (branch == Branch::repulsive && p.lambda < 0.0) {
    throw DomainError("attractive coupling lambda=" + detail::fmt_double(p.lambda) +
                      " rejected; pass Branch::allow_attractive to opt in");
  }
}

/// Minimizes the product-state energy over the orbital frequency. The
/// stationary point is w_HF = w0 sqrt(1 - L) with total energy w0 sqrt(1 - L).
///
/// Note: the frequently quoted E_HF = 2 w0 sqrt(1 - L) is twice this minimum
/// and does not reduce to the exact E(L=0) = w0; we report the functional's
/// own minimum.
inline HartreeFockResult hartree_fock(const ModelParams& p, Branch branch = Branch::repulsive) {
  validate_hf(p, branch);
  const double w = p.omega0 * std::sqrt(1.0 - p.lambda);
  return {w, hartree_fock_energy(p, w)};
}

/// Golden-section route to the same minimum, for cross-checking the closed
/// form. The objective is unimodal in w and [1e-3 w0, 1e3 w0] contains the
/// minimizer for 1 - L in (1e-6, 1e6). Accuracy in w is limited to about
/// sqrt(machine epsilon) by the flatness of the minimum.
inline HartreeFockResult hartree_fock_golden(const ModelParams& p,
                                             Branch branch = Branch::repulsive) {
  validate_hf(p, branch);
  // Minimize in log w so the bracket spans decades evenly.
  auto objective = [&](double log_w) { return hartree_fock_energy(p, std::exp(log_w)).total; };
  const auto m = golden_section_minimize(objective, std::log(1e-3 * p.omega0),
                                         std::log(1e3 * p.omega0), 1e-15);
  // Golden section stalls near sqrt(eps); finish with parabolic steps.
  double u = m.x;
  for (int it = 0; it < 3; ++it) {
    const double h = 1e-5;
    const double fm = objective(u - h);
    const double f0 = objective(u);
    const double fp = objective(u + h);
    const double curvature = fm - 2.0 * f0 + fp;
    if (!(curvature > 0.0)) break;
    u -= 0.5 * h * (fp - fm) / curvature;
  }
  const double w = std::exp(std::abs(u - m.x) < 1e-3 ? u : m.x);
  return {w, hartree_fock_energy(p, w)};
}

}  // namespace mh
