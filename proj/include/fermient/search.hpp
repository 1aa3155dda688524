// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file search.hpp
 * @brief Existence search for states with rho^(M) proportional to identity.
 *
 * A state whose determinants pairwise share fewer than N-M orbitals has a
 * diagonal rho^(M), and it is maximal iff |amplitude|^2 solves
 * A^(M) x = C(N,M)/C(D,M) 1. The search walks isomorphism classes of such
 * hypergraphs level by level (one edge more per level) and asks the exact LP
 * for each class that covers every M-subset.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermient/canonical.hpp"
#include "fermient/hypergraph.hpp"
#include "fermient/rational_lp.hpp"

namespace fermient {

enum class Classification { NotExists, SteinerRequired, NeedsSearch };

struct ClassificationResult {
  Classification kind;
  std::string reason;
};

ClassificationResult classify_existence(int D, int N, int M);

/// ceil(C(D,M) / C(N,M)).
std::uint64_t b_min(int D, int N, int M);

struct EnumerationOptions {
  std::size_t max_edges = 0;            ///< 0: no limit
  std::uint64_t budget_classes = 0;     ///< 0: no limit
  double budget_seconds = 0.0;          ///< 0: no limit
  int threads = 1;                      ///< 1 runs the serial path
  /// Drop classes whose edges plus all still-admissible edges miss some
  /// M-subset; no extension of such a class can solve the system.
  bool prune_uncoverable = false;
  CanonicalOptions canonical{};
};

struct EnumerationStats {
  std::uint64_t classes_visited = 0;
  std::vector<std::uint64_t> per_level;  ///< index = edge count
  std::uint64_t pruned = 0;
  bool completed = false;               ///< false when a budget stopped it
  std::string stop_reason;
};

/// Calls `visit` once per isomorphism class of overlap-admissible N-uniform
/// hypergraphs on D vertices, by increasing edge count and, within a level,
/// by canonical key. The visitor returns false to stop early. Classes with
/// fewer than b_min edges are generated but not visited.
EnumerationStats enumerate_admissible_classes(
    int D, int N, int M, const EnumerationOptions& options,
    const std::function<bool(const Hypergraph&)>& visit);

/// Found states in Steiner-required cells are ExistsWithState with
/// steiner_required set.
enum class VerdictKind { NotExists, ExistsWithState, ExhaustedNoSolution, Unknown };

std::string to_string(VerdictKind kind);

struct SearchOptions {
  EnumerationOptions enumeration{};
  bool use_constructions = true;   ///< GHZ and cyclic-orbit designs first
  bool use_particle_hole = false;  ///< search at min(N, D-N) and dualize
  std::uint64_t steiner_node_budget = 50'000'000;
  double verify_tol = 1e-10;
};

struct ExistenceVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::string reason;
  std::string method;  ///< classification, construction, steiner, enumeration
  bool steiner_required = false;
  std::optional<FermionState> state;
  std::optional<Hypergraph> hypergraph;
  std::optional<std::vector<mpq_class>> solution;  ///< aligned with hypergraph
  std::uint64_t classes_visited = 0;
  std::pair<std::size_t, std::size_t> edges_range{0, 0};
  double deviation = 0.0;
  double elapsed_seconds = 0.0;
  SearchOptions options;
};

ExistenceVerdict search_maximal_state(int D, int N, int M,
                                      const SearchOptions& options = {});

/// Uniform amplitudes 1/sqrt(b). Throws std::invalid_argument unless hg is an
/// M-design satisfying the overlap criterion.
FermionState design_to_state(const Hypergraph& hg, int M);

/// amplitude sqrt(x_k) on edge k, zero weights dropped.
FermionState solution_to_state(const Hypergraph& hg, const std::vector<mpq_class>& x);

struct NestingEntry {
  int M = 0;
  bool maximal = false;
  double deviation = 0.0;
  std::optional<bool> exact_identity;  ///< A^(M) x == C(N,M)/C(D,M) 1
};

/// verify_maximal for M' = 1..M; with a hypergraph and solution also checks
/// the exact rational identity at each M'.
std::vector<NestingEntry> nesting_check(
    const FermionState& state, int M, double tol = 1e-9,
    const std::optional<std::pair<Hypergraph, std::vector<mpq_class>>>& exact = {});

/// Steiner system S(t, k, v) by exact cover, first block {1..k}. Returns
/// nothing when the divisibility conditions fail or the search space is
/// exhausted; throws ResourceExhausted past `node_budget`.
std::optional<Hypergraph> find_steiner_system(int v, int k, int t,
                                              std::uint64_t node_budget,
                                              std::string* reason = nullptr);

/// Cyclic or block-diagonal hypergraph that is an M-design and satisfies the
/// overlap criterion, if one of the tried shapes works.
std::optional<Hypergraph> construct_design(int D, int N, int M);

}  // namespace fermient
