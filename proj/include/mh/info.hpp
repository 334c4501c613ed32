// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file info.hpp
 * @brief Purity, linear entropy and quasiparticle weight of geometric
 *        occupation spectra, plus the repulsive/attractive duality map.
 */

#pragma once

#include <cmath>

#include "mh/errors.hpp"
#include "mh/model.hpp"

namespace mh {

struct EntropyReport {
  double xi;
  double purity;
  double linear_entropy;
  double quasiparticle_weight;
};

inline void check_xi(double xi) {
  if (!(xi >= 0.0) || !(xi < 1.0)) {
    throw DomainError("occupation ratio xi must lie in [0, 1), got " + detail::fmt_double(xi));
  }
}

/// sum_n P_n² = (1 - xi)/(1 + xi); 1 only for an idempotent one-matrix.
inline double purity(double xi) {
  check_xi(xi);
  return (1.0 - xi) / (1.0 + xi);
}

/// 1 - purity, written as 2 xi/(1 + xi) to keep precision at small xi.
inline double linear_entropy(double xi) {
  check_xi(xi);
  return 2.0 * xi / (1.0 + xi);
}

/// P_0 - P_1 = (1 - xi)².
inline double quasiparticle_weight(double xi) {
  check_xi(xi);
  return (1.0 - xi) * (1.0 - xi);
}

inline EntropyReport entropy_report(double xi) {
  return {xi, purity(xi), linear_entropy(xi), quasiparticle_weight(xi)};
}

/// Attractive coupling with the same occupation spectrum as `lambda`.
///
/// xi depends on L only through s = (1 - 2L)^{1/4}, and s -> 1/s leaves
/// [(1 - s)/(1 + s)]² unchanged. Solving 1 - 2L_a = 1/(1 - 2L) gives
/// L_a = -L/(1 - 2L).
inline double dual_coupling(double lambda) {
  if (!(lambda > 0.0 && lambda < kStabilityBound)) {
    throw DomainError("dual coupling is defined for lambda in (0, 0.5), got " +
                      detail::fmt_double(lambda));
  }
  return -lambda / (1.0 - 2.0 * lambda);
}

}  // namespace mh
