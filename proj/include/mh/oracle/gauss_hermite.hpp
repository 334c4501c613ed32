// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file gauss_hermite.hpp
 * @brief Gauss-Hermite and trapezoid rules for integrals over the real line.
 *
 * Nodes are roots of H_n found by Newton iteration from asymptotic starting
 * guesses. The recurrence is run on Hermite *functions* (polynomial times
 * exp(-t²/2)) in long double, which yields the combined weights
 * w_i exp(t_i²) directly; these are O(1) even where w_i itself underflows.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "mh/errors.hpp"
#include "mh/model.hpp"

namespace mh::oracle {

enum class RuleKind { gauss_hermite_mapped, uniform_trapezoid };

/// One-dimensional rule: integral f(x) dx ~ sum_i weights[i] f(nodes[i]).
struct QuadratureRule {
  RuleKind kind = RuleKind::gauss_hermite_mapped;
  std::vector<double> nodes;
  std::vector<double> weights;
  double alpha = 1.0;       ///< Gaussian scale of the mapped rule
  double half_width = 0.0;  ///< trapezoid only

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  /// Same family with about twice the nodes, for stability checks.
  [[nodiscard]] QuadratureRule refined() const;
};

struct RawGaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;         ///< for integral exp(-t²) g(t) dt
  std::vector<double> scaled_weights;  ///< weights[i] * exp(nodes[i]²)
};

/// n-point rule for the weight exp(-t²), nodes in descending order.
inline RawGaussHermite gauss_hermite(std::size_t n) {
  if (n == 0) throw DomainError("Gauss-Hermite rule needs at least one node");
  using real = long double;
  const real pim4 = std::pow(std::numbers::pi_v<real>, -0.25L);
  const auto nd = static_cast<real>(n);
  RawGaussHermite out;
  out.nodes.assign(n, 0.0);
  out.weights.assign(n, 0.0);
  out.scaled_weights.assign(n, 0.0);
  std::vector<real> x(n, 0.0L);
  // Number of eigenvalues below z of the Jacobi matrix (zero diagonal,
  // off-diagonal sqrt(k/2)), whose eigenvalues are the nodes.
  auto count_below = [n](real z) {
    std::size_t count = 0;
    real d = -z;
    if (d < 0.0L) ++count;
    for (std::size_t k = 1; k < n; ++k) {
      if (d == 0.0L) d = 1e-4000L;
      d = -z - (0.5L * static_cast<real>(k)) / d;
      if (d < 0.0L) ++count;
    }
    return count;
  };
  const std::size_t m = (n + 1) / 2;
  const real upper = std::sqrt(2.0L * nd + 1.0L);
  for (std::size_t i = 0; i < m; ++i) {
    // i-th largest node is eigenvalue n - 1 - i in ascending order.
    const std::size_t k = n - 1 - i;
    real lo = 0.0L;
    real hi = i == 0 ? upper : x[i - 1];
    for (int it = 0; it < 200 && hi - lo > 1e-9L * std::max(1.0L, std::abs(hi)); ++it) {
      const real mid = 0.5L * (lo + hi);
      if (count_below(mid) <= k) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    real z = 0.5L * (lo + hi);
    real derivative = 0.0L;
    for (int it = 0; it < 100; ++it) {
      // Orthonormal Hermite functions at z: p1 = h_n, p2 = h_{n-1}.
      real p1 = pim4 * std::exp(-0.5L * z * z);
      real p2 = 0.0L;
      for (std::size_t j = 1; j <= n; ++j) {
        const auto jd = static_cast<real>(j);
        const real p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0L / jd) * p2 - std::sqrt((jd - 1.0L) / jd) * p3;
      }
      derivative = std::sqrt(2.0L * nd) * p2;
      const real step = p1 / derivative;
      z -= step;
      if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    // w_i = 2 / p_n'(z)² for orthonormal polynomials; with Hermite functions
    // the same expression gives w_i exp(z²).
    const real scaled = 2.0L / (derivative * derivative);
    out.scaled_weights[i] = out.scaled_weights[n - 1 - i] = static_cast<double>(scaled);
    out.weights[i] = out.weights[n - 1 - i] = static_cast<double>(scaled * std::exp(-z * z));
  }
  for (std::size_t i = 0; i < n; ++i) out.nodes[i] = static_cast<double>(x[i]);
  return out;
}

/// Rule for plain integrals of functions decaying like exp(-alpha x²) or faster.
inline QuadratureRule gauss_hermite_mapped(std::size_t n, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Gauss-Hermite scale alpha must be positive");
  const auto raw = gauss_hermite(n);
  QuadratureRule rule;
  rule.kind = RuleKind::gauss_hermite_mapped;
  rule.alpha = alpha;
  const double s = 1.0 / std::sqrt(alpha);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = raw.nodes[i] * s;
    rule.weights[i] = raw.scaled_weights[i] * s;
  }
  return rule;
}

inline QuadratureRule uniform_trapezoid(double half_width, std::size_t count) {
  if (count < 2 || !(half_width > 0.0)) {
    throw DomainError("trapezoid rule needs half_width > 0 and at least two nodes");
  }
  QuadratureRule rule;
  rule.kind = RuleKind::uniform_trapezoid;
  rule.half_width = half_width;
  const double h = 2.0 * half_width / static_cast<double>(count - 1);
  rule.nodes.resize(count);
  rule.weights.assign(count, h);
  for (std::size_t i = 0; i < count; ++i) rule.nodes[i] = -half_width + h * static_cast<double>(i);
  rule.weights.front() = rule.weights.back() = 0.5 * h;
  return rule;
}

inline QuadratureRule QuadratureRule::refined() const {
  if (kind == RuleKind::gauss_hermite_mapped) return gauss_hermite_mapped(2 * size(), alpha);
  return uniform_trapezoid(half_width, 2 * size() - 1);
}

inline constexpr std::size_t kDefaultNodes = 96;
inline constexpr std::size_t kTrapezoidNodes = 401;

/// Default product-rule axis for the model at `params`: mapped Gauss-Hermite
/// with scale w2/2, half the slowest Gaussian decay rate of psi².
inline QuadratureRule default_rule(const ModelParams& params, std::size_t nodes = kDefaultNodes) {
  const double w2 = params.omega0 * std::sqrt(1.0 - 2.0 * params.lambda);
  return gauss_hermite_mapped(nodes, 0.5 * std::min(w2, params.omega0));
}

/// Trapezoid fallback spanning L = 8/sqrt(w_min).
inline QuadratureRule trapezoid_rule(const ModelParams& params,
                                     std::size_t count = kTrapezoidNodes) {
  const double w2 = params.omega0 * std::sqrt(1.0 - 2.0 * params.lambda);
  return uniform_trapezoid(8.0 / std::sqrt(std::min(w2, params.omega0)), count);
}

}  // namespace mh::oracle
