// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file canonical.hpp
 * @brief Canonical labelling of uniform hypergraphs.
 *
 * Individualization and refinement: vertex colours are refined by the
 * multiset of edge colourings around each vertex and by pair co-degrees,
 * then the first non-singleton cell is split vertex by vertex. Each discrete
 * colouring induces a relabelling; the key is the smallest sorted relabelled
 * edge list over all leaves. Automorphisms found along the way prune
 * equivalent branches.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermient/hypergraph.hpp"

namespace fermient {

struct CanonicalOptions {
  std::uint64_t max_leaves = 1u << 20;  ///< ResourceExhausted beyond this
  std::size_t max_generators = 64;
};

struct CanonicalForm {
  std::string key;                 ///< D, N, then sorted relabelled edges
  std::vector<int> labelling;      ///< vertex v (0-based) -> canonical label
  std::vector<std::vector<int>> automorphisms;  ///< generators found, 0-based
  std::uint64_t leaves = 0;
};

CanonicalForm canonical_labelling(const Hypergraph& hg,
                                  const CanonicalOptions& options = {});

/// Convenience wrapper returning just the key.
std::string canonical_form(const Hypergraph& hg,
                           const CanonicalOptions& options = {});

/// Edge list of hg relabelled by `labelling`, sorted ascending.
std::vector<Bits> relabel_edges(const std::vector<Bits>& edges,
                                const std::vector<int>& labelling);

}  // namespace fermient
