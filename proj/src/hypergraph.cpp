// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/hypergraph.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fermient {

Hypergraph::Hypergraph(int D, int N, std::vector<Bits> edges)
    : D_(D), N_(N), edges_(std::move(edges)) {
  if (D < 0 || D > kMaxOrbitals) throw std::invalid_argument("hypergraph: D outside [0, 64]");
  if (N < 0 || N > D) throw std::invalid_argument("hypergraph: N outside [0, D]");
  for (Bits e : edges_) {
    if ((e & ~low_mask(D)) != 0)
      throw std::invalid_argument("hypergraph: edge has a vertex above D");
    if (std::popcount(e) != N)
      throw std::invalid_argument("hypergraph: edge is not " + std::to_string(N) +
                                  "-uniform");
  }
  std::vector<Bits> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("hypergraph: duplicate edge");
}

Hypergraph Hypergraph::from_state(const FermionState& state) {
  std::vector<Bits> edges;
  edges.reserve(state.size());
  for (const auto& t : state.terms()) edges.push_back(t.det.occupied.bits());
  return Hypergraph(state.D(), state.N(), std::move(edges));
}

std::vector<std::uint64_t> IncidenceMatrix::row_sums() const {
  std::vector<std::uint64_t> s(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) s[r] += (*this)(r, c);
  return s;
}

std::vector<std::uint64_t> IncidenceMatrix::column_sums() const {
  std::vector<std::uint64_t> s(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) s[c] += (*this)(r, c);
  return s;
}

namespace {

template <class F>
void for_each_subset_of(Bits set, int size, int t, F&& f) {
  int pos[kMaxOrbitals];
  int k = 0;
  for (Bits b = set; b != 0; b &= b - 1) pos[k++] = std::countr_zero(b);
  for (Bits pick : all_subsets(size, t)) {
    Bits sub = 0;
    for (Bits p = pick; p != 0; p &= p - 1) sub |= Bits{1} << pos[std::countr_zero(p)];
    f(sub);
  }
}

}  // namespace

IncidenceMatrix incidence_matrix(const Hypergraph& hg, int M) {
  if (M < 0 || M > hg.N()) throw std::invalid_argument("incidence_matrix: M outside [0, N]");
  IncidenceMatrix a(binomial(hg.D(), M), hg.size(), M);
  for (std::size_t k = 0; k < hg.size(); ++k)
    for_each_subset_of(hg.edges()[k], hg.N(), M,
                       [&](Bits sub) { a(rank_bits(sub, hg.D(), M), k) = 1; });
  return a;
}

bool satisfies_overlap(const Hypergraph& hg, int M) {
  const auto& e = hg.edges();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (std::popcount(e[i] & e[j]) >= hg.N() - M) return false;
  return true;
}

std::vector<std::uint64_t> t_subset_counts(const Hypergraph& hg, int t) {
  if (t < 0 || t > hg.N()) throw std::invalid_argument("t outside [0, N]");
  std::vector<std::uint64_t> counts(binomial(hg.D(), t), 0);
  for (Bits e : hg.edges())
    for_each_subset_of(e, hg.N(), t, [&](Bits sub) { ++counts[rank_bits(sub, hg.D(), t)]; });
  return counts;
}

std::optional<std::uint64_t> is_t_design(const Hypergraph& hg, int t) {
  const std::vector<std::uint64_t> c = t_subset_counts(hg, t);
  if (c.empty()) return std::nullopt;
  if (std::any_of(c.begin(), c.end(), [&](std::uint64_t x) { return x != c.front(); }))
    return std::nullopt;
  return c.front();
}

bool is_steiner(const Hypergraph& hg, int t) {
  const auto lambda = is_t_design(hg, t);
  return lambda && *lambda == 1;
}

Hypergraph complement(const Hypergraph& hg) {
  std::vector<Bits> edges;
  edges.reserve(hg.size());
  for (Bits e : hg.edges()) edges.push_back(~e & low_mask(hg.D()));
  return Hypergraph(hg.D(), hg.D() - hg.N(), std::move(edges));
}

Hypergraph complete_hypergraph(int D, int N) {
  return Hypergraph(D, N, all_subsets(D, N));
}

Hypergraph projective_plane_order3() {
  // normalized nonzero vectors of GF(3)^3 stand for both points and lines
  std::vector<std::array<int, 3>> vecs;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const int lead = a != 0 ? a : (b != 0 ? b : c);
        if (lead == 1) vecs.push_back({a, b, c});
      }
  std::vector<Bits> lines;
  for (const auto& l : vecs) {
    Bits e = 0;
    for (std::size_t p = 0; p < vecs.size(); ++p)
      if ((l[0] * vecs[p][0] + l[1] * vecs[p][1] + l[2] * vecs[p][2]) % 3 == 0)
        e |= Bits{1} << p;
    lines.push_back(e);
  }
  return Hypergraph(13, 4, std::move(lines));
}

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  int lineno = 0;
  int D = -1, N = -1;
  std::vector<Bits> edges;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("hypergraph line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long> nums;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        fail("not an integer: '" + tok + "'");
      }
      if (used != tok.size()) fail("not an integer: '" + tok + "'");
      nums.push_back(v);
    }
    if (D < 0) {
      if (nums.size() != 2) fail("header must be 'D N'");
      if (nums[0] < 0 || nums[0] > kMaxOrbitals || nums[1] < 0 || nums[1] > nums[0])
        fail("header values out of range");
      D = static_cast<int>(nums[0]);
      N = static_cast<int>(nums[1]);
      continue;
    }
    if (static_cast<int>(nums.size()) != N)
      fail("edge has " + std::to_string(nums.size()) + " vertices, expected " +
           std::to_string(N));
    Bits e = 0;
    for (long v : nums) {
      if (v < 1 || v > D) fail("vertex " + std::to_string(v) + " outside 1.." + std::to_string(D));
      if (e & (Bits{1} << (v - 1))) fail("repeated vertex " + std::to_string(v));
      e |= Bits{1} << (v - 1);
    }
    edges.push_back(e);
  }
  if (D < 0) throw std::invalid_argument("hypergraph: missing 'D N' header");
  return Hypergraph(D, N, std::move(edges));
}

void write_hypergraph(std::ostream& out, const Hypergraph& hg) {
  out << hg.D() << ' ' << hg.N() << '\n';
  for (Bits e : hg.edges()) {
    bool first = true;
    for (Bits b = e; b != 0; b &= b - 1) {
      out << (first ? "" : " ") << std::countr_zero(b) + 1;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace fermient
