// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solver.hpp
 * @brief Stationarity of E_p in xi_p at fixed q, and the sweeps built on it.
 *
 * dE_p/dxi_p = 0 rearranges to LHS_q(xi_p) = L (w0/(2 w_s))² with
 *
 *   LHS_q(x) = x^q / [q (x^{2q-1} - x) + (1 - q)(1 - x^{2q})] ((1 + x)/(1 - x))³,
 *
 * which at q = 1/2 is sqrt(x)/(1 - x) ((1 + x)/(1 - x))³ and is solved by
 * the exact xi(L).
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "mh/errors.hpp"
#include "mh/info.hpp"
#include "mh/model.hpp"
#include "mh/mueller.hpp"
#include "mh/numeric.hpp"

namespace mh {

/// Range of q over which root uniqueness has been checked.
inline constexpr double kMinQ = 0.3;
inline constexpr double kMaxQ = 0.7;
inline constexpr double kDefaultRootTol = 1e-15;
inline constexpr std::size_t kUniquenessScanPoints = 2048;

struct StationaritySolution {
  double lambda = 0.0;
  double q = 0.5;
  double xi_p = 0.0;
  double rhs = 0.0;
  int iterations = 0;
  double residual = 0.0;
  /// Sign changes of LHS - RHS seen on the log scan (with the xi_p = 0 end).
  int sign_changes = 1;

  [[nodiscard]] bool unique() const { return sign_changes == 1; }
};

inline double stationarity_lhs(double q, double xi_p) {
  if (!(xi_p > 0.0 && xi_p < 1.0)) {
    throw DomainError("stationarity condition needs xi_p in (0, 1), got " +
                      detail::fmt_double(xi_p));
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("operator power q must lie in (0, 1), got " + detail::fmt_double(q));
  }
  const double denom = q * (std::pow(xi_p, 2.0 * q - 1.0) - xi_p) +
                       (1.0 - q) * (1.0 - std::pow(xi_p, 2.0 * q));
  const double ratio = (1.0 + xi_p) / (1.0 - xi_p);
  return std::pow(xi_p, q) / denom * ratio * ratio * ratio;
}

/// The q = 1/2 form of the left-hand side.
inline double symmetric_stationarity_lhs(double xi) {
  if (!(xi >= 0.0 && xi < 1.0)) {
    throw DomainError("stationarity condition needs xi in [0, 1), got " + detail::fmt_double(xi));
  }
  const double ratio = (1.0 + xi) / (1.0 - xi);
  return std::sqrt(xi) / (1.0 - xi) * ratio * ratio * ratio;
}

/// L (w0 / (2 w_s))².
inline double stationarity_rhs(const ModelParams& params) {
  validate(params, Branch::repulsive, kMaxCoupling);
  const double ws = derive_frequencies(params).omega_s;
  const double t = params.omega0 / (2.0 * ws);
  return params.lambda * t * t;
}

inline void check_q_window(double q) {
  if (!(q >= kMinQ && q <= kMaxQ)) {
    throw DomainError("operator power q=" + detail::fmt_double(q) +
                      " outside the validated window [0.3, 0.7]");
  }
}

/// Root of LHS_q(xi_p) = RHS in (0, 1).
///
/// A 2048-point log scan of (1e-12, 1 - 1e-9), anchored by LHS(0) = 0 < RHS,
/// brackets the root and counts sign changes; more than one is surfaced
/// through StationaritySolution::sign_changes. Bisection (geometric while the
/// bracket spans more than a factor of two) then runs until the bracket is
/// narrower than tol relative to its upper end or stops shrinking.
inline StationaritySolution solve_xi_p(const ModelParams& params, double q,
                                       double tol = kDefaultRootTol) {
  validate(params, Branch::repulsive, kMaxCoupling);
  check_q_window(q);
  if (!(tol >= 1e-15)) {
    throw DomainError("root tolerance must be >= 1e-15, got " + detail::fmt_double(tol));
  }
  StationaritySolution sol;
  sol.lambda = params.lambda;
  sol.q = q;
  if (params.lambda == 0.0) return sol;

  const double rhs = stationarity_rhs(params);
  sol.rhs = rhs;
  auto f = [&](double x) { return stationarity_lhs(q, x) - rhs; };

  const auto scan = logspace(1e-12, 1.0 - 1e-9, kUniquenessScanPoints);
  double lo = 0.0;
  double hi = -1.0;
  bool prev_negative = true;  // f(0) = -rhs < 0
  double prev_x = 0.0;
  int changes = 0;
  for (double x : scan) {
    const bool negative = f(x) < 0.0;
    if (negative != prev_negative) {
      if (changes == 0) {
        lo = prev_x;
        hi = x;
      }
      ++changes;
    }
    prev_negative = negative;
    prev_x = x;
  }
  sol.sign_changes = changes;
  if (changes == 0) {
    throw SolverError("stationarity condition has no sign change on (0, 1) for lambda=" +
                      detail::fmt_double(params.lambda) + ", q=" + detail::fmt_double(q));
  }

  int it = 0;
  for (; it < 10000; ++it) {
    if (hi - lo <= tol * hi) break;
    double mid;
    if (lo == 0.0) {
      mid = hi * 1e-3;
    } else if (hi > 2.0 * lo) {
      mid = std::sqrt(lo * hi);
    } else {
      mid = lo + 0.5 * (hi - lo);
    }
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double flo = lo > 0.0 ? std::abs(f(lo)) : rhs;
  const double fhi = std::abs(f(hi));
  sol.xi_p = flo < fhi ? lo : hi;
  sol.residual = std::min(flo, fhi);
  sol.iterations = it;
  return sol;
}

/// R(L) = xi_p(L, q) / xi(L); defined for L > 0.
inline double occupation_ratio(const ModelParams& params, double q, double tol = kDefaultRootTol) {
  return solve_xi_p(params, q, tol).xi_p / xi_of_lambda(params.lambda);
}

struct SweepRecord {
  double lambda = 0.0;
  double q = 0.5;
  double xi = 0.0;
  double xi_p = 0.0;
  double ratio = 0.0;  ///< xi_p / xi; NaN at L = 0
  double e_p = 0.0;
  double e_ex = 0.0;
  double purity = 1.0;
  double linear_entropy = 0.0;
  double lambda_dual = 0.0;          ///< attractive partner, NaN at L = 0
  double linear_entropy_dual = 0.0;  ///< L(xi(lambda_dual))
  std::string error;                 ///< empty when the point succeeded

  [[nodiscard]] bool ok() const { return error.empty(); }
};

inline SweepRecord sweep_point(const ModelParams& base, double q, double lambda,
                               double tol = kDefaultRootTol) {
  SweepRecord rec;
  rec.lambda = lambda;
  rec.q = q;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    const ModelParams p{base.omega0, lambda};
    const auto sol = solve_xi_p(p, q, tol);
    rec.xi = xi_of_lambda(lambda);
    rec.xi_p = sol.xi_p;
    rec.ratio = rec.xi > 0.0 ? rec.xi_p / rec.xi : nan;
    rec.e_p = energy_parametric(p, KernelSpec::sum_one(q), sol.xi_p).total;
    rec.e_ex = exact_energy(p).total;
    rec.purity = purity(sol.xi_p);
    rec.linear_entropy = linear_entropy(sol.xi_p);
    if (lambda > 0.0) {
      rec.lambda_dual = dual_coupling(lambda);
      rec.linear_entropy_dual = linear_entropy(xi_of_lambda(rec.lambda_dual));
    } else {
      rec.lambda_dual = nan;
      rec.linear_entropy_dual = nan;
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

/// Runs `work(i)` for i in [0, n) on up to `threads` workers.
template <typename Work>
void parallel_for(std::size_t n, unsigned threads, Work&& work) {
  if (n < threads) threads = static_cast<unsigned>(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// One record per (q, L), q-major. Each slot is written by exactly one
/// worker, so the output does not depend on `threads`.
inline std::vector<SweepRecord> sweep(const ModelParams& base, const std::vector<double>& q_list,
                                      const std::vector<double>& lambda_grid, unsigned threads = 1,
                                      double tol = kDefaultRootTol) {
  std::vector<SweepRecord> out(q_list.size() * lambda_grid.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const std::size_t qi = i / lambda_grid.size();
    const std::size_t li = i % lambda_grid.size();
    out[i] = sweep_point(base, q_list[qi], lambda_grid[li], tol);
  });
  return out;
}

inline constexpr double kCrossingLow = 0.001;
inline constexpr double kCrossingHigh = kMaxCoupling;

/// Bisection for the sign change of g on [a, b]; throws if g(a), g(b) agree in sign.
template <typename G>
double bisect_sign_change(G&& g, double a, double b, const std::string& what) {
  double ga = g(a);
  const double gb = g(b);
  if ((ga < 0.0) == (gb < 0.0)) {
    throw SolverError("no crossing: " + what + " does not change sign on [" +
                      detail::fmt_double(a) + ", " + detail::fmt_double(b) + "]");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (ga < 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return a + 0.5 * (b - a);
}

/// Coupling L0 where xi_p(L0, q) = xi(L0), found on (0.001, 0.4999).
inline double find_crossing(const ModelParams& base, double q, double tol = kDefaultRootTol) {
  check_q_window(q);
  if (q == 0.5) throw SolverError("no crossing: R(lambda) = 1 identically at q = 0.5");
  return bisect_sign_change(
      [&](double lambda) { return occupation_ratio({base.omega0, lambda}, q, tol) - 1.0; },
      kCrossingLow, kCrossingHigh, "R(lambda) - 1");
}

/// Least-squares slope of ln xi_p against ln L on `points` log-spaced couplings.
inline double scaling_exponent(const ModelParams& base, double q, double lambda_lo = 1e-4,
                               double lambda_hi = 1e-3, std::size_t points = 8,
                               double tol = kDefaultRootTol) {
  const auto grid = logspace(lambda_lo, lambda_hi, points);
  std::vector<double> lx, ly;
  for (double lambda : grid) {
    lx.push_back(std::log(lambda));
    ly.push_back(std::log(solve_xi_p({base.omega0, lambda}, q, tol).xi_p));
  }
  return fit_slope(lx, ly);
}

}  // namespace mh
