// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/rational_lp.hpp"

#include <stdexcept>

namespace fermient {

FeasibilityProblem FeasibilityProblem::from_hypergraph(const Hypergraph& hg, int M) {
  const IncidenceMatrix a = incidence_matrix(hg, M);
  FeasibilityProblem p;
  p.b = a.cols();
  p.A.assign(a.rows(), std::vector<std::uint8_t>(a.cols(), 0));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) p.A[r][c] = a(r, c);
  p.rhs = mpq_class(binomial(hg.N(), M), binomial(hg.D(), M));
  p.rhs.canonicalize();
  return p;
}

bool FeasibilityProblem::satisfied_by(const std::vector<mpq_class>& x) const {
  if (x.size() != b) return false;
  for (const auto& row : A) {
    mpq_class s = 0;
    for (std::size_t k = 0; k < b; ++k)
      if (row[k]) s += x[k];
    if (s != rhs) return false;
  }
  return true;
}

std::optional<FeasibilitySolution> lp_feasible(const FeasibilityProblem& p) {
  const std::size_t m = p.A.size(), n = p.b;
  if (p.rhs < 0) throw std::invalid_argument("lp_feasible: negative right-hand side");
  if (m == 0) return FeasibilitySolution{std::vector<mpq_class>(n, 0)};
  // columns: n structural, m artificial, then the right-hand side
  const std::size_t width = n + m + 1;
  std::vector<std::vector<mpq_class>> t(m, std::vector<mpq_class>(width, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (p.A[r].size() != n) throw std::invalid_argument("lp_feasible: ragged matrix");
    for (std::size_t c = 0; c < n; ++c) t[r][c] = p.A[r][c];
    t[r][n + r] = 1;
    t[r][width - 1] = p.rhs;
    basis[r] = n + r;
  }
  // reduced costs of the phase-one objective sum(artificials)
  std::vector<mpq_class> cost(width, 0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (p.A[r][c]) cost[c] -= 1;
  for (std::size_t r = 0; r < m; ++r) cost[width - 1] -= p.rhs;

  mpq_class ratio, best;
  while (true) {
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c)
      if (cost[c] < 0) {
        enter = c;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(t[r][enter]) <= 0) continue;
      ratio = t[r][width - 1] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen for a bounded-below objective
    const mpq_class piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || sgn(t[r][enter]) == 0) continue;
      const mpq_class f = t[r][enter];
      for (std::size_t c = 0; c < width; ++c)
        if (sgn(t[leave][c]) != 0) t[r][c] -= f * t[leave][c];
    }
    if (sgn(cost[enter]) != 0) {
      const mpq_class f = cost[enter];
      for (std::size_t c = 0; c < width; ++c)
        if (sgn(t[leave][c]) != 0) cost[c] -= f * t[leave][c];
    }
    basis[leave] = enter;
  }
  if (sgn(cost[width - 1]) != 0) return std::nullopt;
  FeasibilitySolution sol{std::vector<mpq_class>(n, 0)};
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) sol.x[basis[r]] = t[r][width - 1];
  return sol;
}

std::vector<mpq_class> uniform_vector(std::size_t b) {
  return std::vector<mpq_class>(b, mpq_class(1, b == 0 ? 1 : b));
}

}  // namespace fermient
