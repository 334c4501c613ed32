// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mh/info.hpp"
#include "mh/solver.hpp"

namespace mh {

enum class EntropyOrdering { parametric_larger, exact_larger, equal };

struct EntropyComparison {
  double lambda;
  double q;
  double linear_entropy_parametric;  ///< L at the stationary xi_p
  double linear_entropy_exact;       ///< L at xi(lambda)
  EntropyOrdering ordering;
};

/// Linear entropy of the stationary parametric spectrum against the exact
/// one. Since L = 2 xi/(1 + xi) is increasing, the ordering follows R(L) - 1.
inline EntropyComparison entropy_comparison(const ModelParams& params, double q,
                                            double tol = kDefaultRootTol) {
  const auto sol = solve_xi_p(params, q, tol);
  const double lp = linear_entropy(sol.xi_p);
  const double le = linear_entropy(xi_of_lambda(params.lambda));
  const auto ordering = lp > le   ? EntropyOrdering::parametric_larger
                        : lp < le ? EntropyOrdering::exact_larger
                                  : EntropyOrdering::equal;
  return {params.lambda, q, lp, le, ordering};
}

/// Coupling where the parametric and exact linear entropies coincide.
inline double entropy_crossing(const ModelParams& base, double q, double tol = kDefaultRootTol) {
  check_q_window(q);
  if (q == 0.5) throw SolverError("no crossing: entropies coincide identically at q = 0.5");
  return bisect_sign_change(
      [&](double lambda) {
        const auto c = entropy_comparison({base.omega0, lambda}, q, tol);
        return c.linear_entropy_parametric - c.linear_entropy_exact;
      },
      kCrossingLow, kCrossingHigh, "L_p - L");
}

}  // namespace mh
