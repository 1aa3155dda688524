// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rational_lp.hpp
 * @brief Exact feasibility of A x = r 1, x >= 0 over the rationals.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "fermient/hypergraph.hpp"

namespace fermient {

struct FeasibilityProblem {
  std::vector<std::vector<std::uint8_t>> A;  ///< rows x b, binary
  mpq_class rhs;                             ///< C(N,M)/C(D,M)
  std::size_t b = 0;

  /// A^(M) of hg with rhs C(N,M)/C(D,M).
  static FeasibilityProblem from_hypergraph(const Hypergraph& hg, int M);

  /// True iff A x == rhs 1 holds exactly.
  bool satisfied_by(const std::vector<mpq_class>& x) const;
};

struct FeasibilitySolution {
  std::vector<mpq_class> x;
};

/// Phase-one simplex with Bland's rule on an exact rational tableau. Returns a
/// basic feasible point, or nothing when the system has no nonnegative
/// solution.
std::optional<FeasibilitySolution> lp_feasible(const FeasibilityProblem& p);

/// x = (1/b) 1, the candidate solution of a design.
std::vector<mpq_class> uniform_vector(std::size_t b);

}  // namespace fermient
