// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/reference_states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fermient {

FermionState build_ghz(int D, int r) {
  if (r < 1 || D < 1 || D % r != 0)
    throw std::invalid_argument("GHZ: r=" + std::to_string(r) +
                                " does not divide D=" + std::to_string(D));
  const int N = D / r;
  const double amp = 1.0 / std::sqrt(static_cast<double>(r));
  std::vector<FermionState::Term> terms;
  for (int block = 0; block < r; ++block)
    terms.push_back({SlaterDeterminant{OrbitalSubset(low_mask(N) << (block * N), D)},
                     Complex(amp)});
  return FermionState::normalized(D, N, std::move(terms));
}

FermionState build_paired_state(int D, int k) {
  if (D < 2 || D % 2 != 0)
    throw std::invalid_argument("paired state needs even D, got " + std::to_string(D));
  if (k < 1 || k > D / 2)
    throw std::invalid_argument("paired state needs 0 < k <= D/2");
  // pair operators are bosonic, so every placement enters with sign +1
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(D / 2, k)));
  std::vector<FermionState::Term> terms;
  for (Bits pairs : all_subsets(D / 2, k)) {
    Bits occ = 0;
    for (Bits p = pairs; p != 0; p &= p - 1) occ |= Bits{3} << (2 * std::countr_zero(p));
    terms.push_back({SlaterDeterminant{OrbitalSubset(occ, D)}, Complex(amp)});
  }
  return FermionState::normalized(D, 2 * k, std::move(terms));
}

Complex determinant(CMatrix a) {
  const std::size_t n = a.rows();
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == Complex{}) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

FermionState rotate_basis(const FermionState& state, const CMatrix& u,
                          double drop_below) {
  const int D = state.D(), N = state.N();
  const std::size_t d = static_cast<std::size_t>(D);
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("rotate_basis: u must be D x D");
  const CMatrix uu = u * u.adjoint();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (std::abs(uu(i, j) - (i == j ? Complex(1.0) : Complex{})) > 1e-10)
        throw std::invalid_argument("rotate_basis: u is not unitary");

  const std::vector<Bits> targets = all_subsets(D, N);
  std::vector<Complex> out(targets.size());
  CMatrix sub(N, N);
  for (const auto& term : state.terms()) {
    const std::vector<int> rows = term.det.occupied.orbitals();
    for (std::size_t t = 0; t < targets.size(); ++t) {
      int c = 0;
      for (Bits b = targets[t]; b != 0; b &= b - 1, ++c) {
        const int col = std::countr_zero(b);
        for (int r = 0; r < N; ++r) sub(r, c) = u(rows[r] - 1, col);
      }
      out[t] += term.amplitude * determinant(sub);
    }
  }
  std::vector<FermionState::Term> terms;
  for (std::size_t t = 0; t < targets.size(); ++t)
    if (std::abs(out[t]) >= drop_below)
      terms.push_back({SlaterDeterminant{OrbitalSubset(targets[t], D)}, out[t]});
  return FermionState::normalized(D, N, std::move(terms));
}

FermionState particle_hole_dual(const FermionState& state) {
  std::vector<FermionState::Term> terms;
  terms.reserve(state.size());
  for (const auto& t : state.terms())
    terms.push_back({SlaterDeterminant{t.det.occupied.complement()}, t.amplitude});
  return FermionState::normalized(state.D(), state.D() - state.N(), std::move(terms));
}

}  // namespace fermient
