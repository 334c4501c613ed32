// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

// Solves the stationarity condition across couplings and prints the
// parametric energy next to the exact one.

#include <cstdio>

#include "mh/diagnostics.hpp"

int main() {
  std::printf("%8s %6s %22s %22s %22s %22s\n", "lambda", "q", "xi", "xi_p", "E_p", "E_ex");
  for (double q : {0.5, 0.4, 0.3}) {
    for (double lambda : {0.05, 0.15, 0.25, 0.35, 0.45}) {
      const mh::ModelParams p{1.0, lambda};
      const auto sol = mh::solve_xi_p(p, q);
      const auto e = mh::energy_parametric(p, mh::KernelSpec::sum_one(q), sol.xi_p);
      std::printf("%8.3f %6.2f %22.17g %22.17g %22.17g %22.17g\n", lambda, q,
                  mh::xi_of_lambda(lambda), sol.xi_p, e.total, mh::exact_energy(p).total);
    }
  }
  for (double q : {0.4, 0.3}) {
    std::printf("q = %.1f: xi_p = xi at lambda0 = %.15f\n", q, mh::find_crossing({1.0, 0.0}, q));
  }
}
