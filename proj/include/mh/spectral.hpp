// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral.hpp
 * @brief Hermite natural orbitals and geometric occupation spectra.
 *
 * The one-matrix of the model is diagonal in oscillator eigenfunctions
 *
 *   gamma(x, x') = sum_n P_n phi_n(x) phi_n(x'),   P_n = (1 - xi) xi^n,
 *
 * with orbital frequency w_bar (Mehler/Schmidt decomposition). The same
 * density is reproduced by any (xi_p, w_p) pair obeying
 * w_s = w_p (1 - xi_p)/(1 + xi_p); that family is the parametric state.
 * Fractional operator powers gamma^q act on the occupations only.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "mh/errors.hpp"
#include "mh/model.hpp"
#include "mh/numeric.hpp"

namespace mh {

inline constexpr double kDefaultTruncationTol = 1e-14;
inline constexpr std::size_t kMinTruncation = 16;
inline constexpr std::size_t kMaxTruncation = 512;

/// phi_0 .. phi_{count-1} at x for oscillator frequency `omega`.
///
/// Runs the normalized three-term recurrence
///   phi_{n+1} = sqrt(2/(n+1)) y phi_n - sqrt(n/(n+1)) phi_{n-1},  y = sqrt(w) x,
/// on mantissas with the Gaussian factor held as a separate log scale, so
/// neither n! nor H_n is formed and nothing overflows or underflows early.
inline std::vector<double> hermite_orbitals(std::size_t count, double omega, double x) {
  std::vector<double> out(count, 0.0);
  if (count == 0) return out;
  const double y = std::sqrt(omega) * x;
  constexpr double kRescale = 1e200;
  const double log_rescale = std::log(kRescale);
  double log_scale = -0.5 * y * y;
  double prev = 0.0;
  double cur = std::pow(omega / std::numbers::pi, 0.25);
  out[0] = cur * std::exp(log_scale);
  for (std::size_t n = 0; n + 1 < count; ++n) {
    const auto nd = static_cast<double>(n);
    const double next = std::sqrt(2.0 / (nd + 1.0)) * y * cur - std::sqrt(nd / (nd + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += log_rescale;
    }
    out[n + 1] = cur * std::exp(log_scale);
  }
  return out;
}

/// Normalized oscillator eigenfunction phi_n(x) at frequency `omega`.
inline double hermite_orbital(std::size_t n, double omega, double x) {
  return hermite_orbitals(n + 1, omega, x)[n];
}

struct OccupationSpectrum {
  double xi = 0.0;
  std::vector<double> weights;  ///< P_n = (1 - xi) xi^n, n < truncation
  std::size_t truncation = 0;
  double tail_mass = 0.0;       ///< xi^N, the occupation beyond the truncation
  double tolerance = kDefaultTruncationTol;

  [[nodiscard]] bool within_tolerance() const { return tail_mass <= tolerance; }

  /// First `count` values of (P_n)^power; 0^power = 0 for power > 0 and
  /// xi^0 = 1, so xi = 0 is the continuous limit.
  [[nodiscard]] std::vector<double> powered_weights(double power, std::size_t count) const {
    std::vector<double> out(count);
    const double head = std::pow(1.0 - xi, power);
    for (std::size_t n = 0; n < count; ++n) {
      out[n] = n == 0 ? head : head * std::pow(xi, static_cast<double>(n) * power);
    }
    return out;
  }
  [[nodiscard]] std::vector<double> powered_weights(double power) const {
    return powered_weights(power, truncation);
  }
};

/// Smallest N with xi^N <= tol, clamped to [16, 512].
inline std::size_t truncation_for(double xi, double tol) {
  if (xi <= 0.0) return kMinTruncation;
  auto n = static_cast<std::size_t>(
      std::clamp(std::ceil(std::log(tol) / std::log(xi)), 0.0, double(kMaxTruncation + 1)));
  while (n > 0 && std::pow(xi, static_cast<double>(n - 1)) <= tol) --n;
  while (n <= kMaxTruncation && std::pow(xi, static_cast<double>(n)) > tol) ++n;
  return std::clamp(n, kMinTruncation, kMaxTruncation);
}

inline OccupationSpectrum occupation_spectrum(double xi, double tol = kDefaultTruncationTol) {
  if (!(xi >= 0.0) || !(xi < 1.0)) {
    throw DomainError("occupation ratio xi must lie in [0, 1), got " + detail::fmt_double(xi));
  }
  if (!(tol > 0.0)) {
    throw DomainError("truncation tolerance must be positive, got " + detail::fmt_double(tol));
  }
  OccupationSpectrum s;
  s.xi = xi;
  s.tolerance = tol;
  s.truncation = truncation_for(xi, tol);
  s.weights.resize(s.truncation);
  double power = 1.0;
  for (std::size_t n = 0; n < s.truncation; ++n) {
    s.weights[n] = (1.0 - xi) * power;
    power *= xi;
  }
  s.tail_mass = power;
  return s;
}

/// Number of terms needed for (P_n)^power: powers below 1 decay as
/// xi^{n power}, so the series runs until (xi^power)^N <= tol.
inline std::size_t powered_truncation(const OccupationSpectrum& spectrum, double power) {
  if (power >= 1.0 || spectrum.xi == 0.0) return spectrum.truncation;
  return std::max(spectrum.truncation,
                  truncation_for(std::pow(spectrum.xi, power), spectrum.tolerance));
}

/// sum_n (P_n)^power phi_n(x) phi_n(x').
inline double one_matrix(const OccupationSpectrum& spectrum, double omega, double power, double x,
                         double x_prime) {
  if (!(power > 0.0)) {
    throw DomainError("operator power must be positive, got " + detail::fmt_double(power));
  }
  const std::size_t count = powered_truncation(spectrum, power);
  const auto w = spectrum.powered_weights(power, count);
  const auto a = hermite_orbitals(count, omega, x);
  const auto b = x == x_prime ? a : hermite_orbitals(count, omega, x_prime);
  CompensatedSum sum;
  for (std::size_t n = 0; n < count; ++n) sum.add(w[n] * a[n] * b[n]);
  return sum.value();
}

inline double density_from_spectrum(const OccupationSpectrum& spectrum, double omega, double x) {
  return one_matrix(spectrum, omega, 1.0, x, x);
}

/// w_p = w_s (1 + xi_p)/(1 - xi_p); keeps the density fixed while xi_p varies.
inline double omega_p_from_constraint(double omega_s, double xi_p) {
  if (!(xi_p >= 0.0) || !(xi_p < 1.0)) {
    throw DomainError("parametric ratio xi_p must lie in [0, 1), got " + detail::fmt_double(xi_p));
  }
  return omega_s * (1.0 + xi_p) / (1.0 - xi_p);
}

/// Variational degrees of freedom: operator powers (q, r) and the
/// parametric occupation ratio with its constrained orbital frequency.
struct ParametricState {
  double q = 0.5;
  double r = 0.5;
  double xi_p = 0.0;
  double omega_p = 1.0;

  static ParametricState from_constraint(double omega_s, double xi_p, double q, double r) {
    return {q, r, xi_p, omega_p_from_constraint(omega_s, xi_p)};
  }
  static ParametricState from_constraint(double omega_s, double xi_p, double q) {
    return from_constraint(omega_s, xi_p, q, 1.0 - q);
  }
};

}  // namespace mh
