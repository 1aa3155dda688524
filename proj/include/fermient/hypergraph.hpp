// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hypergraph.hpp
 * @brief N-uniform hypergraphs, incidence matrices and block designs.
 *
 * Vertices are orbitals 1..D, edges are Slater determinants. Edges keep the
 * order they were given in; column k of an incidence matrix is edge k.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fermient/fock.hpp"

namespace fermient {

class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws std::invalid_argument on duplicate edges, edges of the wrong
  /// size, or vertices above D.
  Hypergraph(int D, int N, std::vector<Bits> edges);

  static Hypergraph from_state(const FermionState& state);

  int D() const noexcept { return D_; }
  int N() const noexcept { return N_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Bits>& edges() const noexcept { return edges_; }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  int D_ = 0;
  int N_ = 0;
  std::vector<Bits> edges_;
};

/// Binary C(D,M) x b matrix; entry (rank(beta), k) = 1 iff beta is in edge k.
class IncidenceMatrix {
 public:
  IncidenceMatrix(std::size_t rows, std::size_t cols, int M)
      : rows_(rows), cols_(cols), M_(M), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int M() const noexcept { return M_; }

  std::uint8_t operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::uint8_t& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }

  std::vector<std::uint64_t> row_sums() const;
  std::vector<std::uint64_t> column_sums() const;

 private:
  std::size_t rows_, cols_;
  int M_;
  std::vector<std::uint8_t> data_;
};

IncidenceMatrix incidence_matrix(const Hypergraph& hg, int M);

/// Every pair of edges shares fewer than N-M vertices.
bool satisfies_overlap(const Hypergraph& hg, int M);

/// Edge count containing each t-subset, indexed by rank.
std::vector<std::uint64_t> t_subset_counts(const Hypergraph& hg, int t);

/// lambda when every t-subset lies in exactly lambda edges.
std::optional<std::uint64_t> is_t_design(const Hypergraph& hg, int t);
bool is_steiner(const Hypergraph& hg, int t);

/// Edges replaced by their vertex complements, order preserved.
Hypergraph complement(const Hypergraph& hg);

/// All C(D,N) N-subsets as edges.
Hypergraph complete_hypergraph(int D, int N);

/// Lines of the projective plane over GF(3): 13 points, 13 lines of 4.
Hypergraph projective_plane_order3();

/// Text format: header "D N", then one edge per line of 1-based vertices.
/// Blank lines and lines starting with '#' are skipped. Parse errors throw
/// std::invalid_argument naming the line.
Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& hg);

}  // namespace fermient
