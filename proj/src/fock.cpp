// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fermient {
namespace {

using Table = std::array<std::array<std::uint64_t, 65>, 65>;

constexpr Table make_table() {
  Table t{};
  for (int n = 0; n <= 64; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}

constexpr Table kBinom = make_table();

void check_D(int D) {
  if (D < 0 || D > kMaxOrbitals)
    throw std::invalid_argument("orbital count D=" + std::to_string(D) +
                                " outside [0, 64]");
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 64) throw std::invalid_argument("binomial: n outside [0, 64]");
  if (k < 0 || k > n) return 0;
  return kBinom[n][k];
}

OrbitalSubset::OrbitalSubset(Bits bits, int D) : bits_(bits), D_(D) {
  check_D(D);
  if ((bits & ~low_mask(D)) != 0)
    throw std::invalid_argument("orbital subset has bits above D=" +
                                std::to_string(D));
}

OrbitalSubset OrbitalSubset::from_orbitals(std::span<const int> orbitals, int D) {
  check_D(D);
  Bits b = 0;
  for (int o : orbitals) {
    if (o < 1 || o > D)
      throw std::invalid_argument("orbital " + std::to_string(o) +
                                  " outside 1.." + std::to_string(D));
    const Bits bit = Bits{1} << (o - 1);
    if (b & bit)
      throw std::invalid_argument("duplicate orbital " + std::to_string(o));
    b |= bit;
  }
  return OrbitalSubset(b, D, Unchecked{});
}

std::vector<int> OrbitalSubset::orbitals() const {
  std::vector<int> out;
  out.reserve(size());
  for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::uint64_t rank_bits(Bits bits, int D, int M) noexcept {
  // lex rank = C(D,M) - 1 - colex rank of the mirrored set
  std::uint64_t colex = 0;
  int j = 0;
  for (Bits b = bits; b != 0; ++j) {
    const int top = 63 - std::countl_zero(b);
    colex += kBinom[D - 1 - top][j + 1];
    b &= ~(Bits{1} << top);
  }
  return kBinom[D][M] - 1 - colex;
}

std::uint64_t rank_subset(const OrbitalSubset& subset, int D, int M) {
  check_D(D);
  if (M < 0 || M > D || subset.size() != M)
    throw std::invalid_argument("rank_subset: subset size " +
                                std::to_string(subset.size()) + " != M=" +
                                std::to_string(M));
  if ((subset.bits() & ~low_mask(D)) != 0)
    throw std::invalid_argument("rank_subset: orbital above D");
  return rank_bits(subset.bits(), D, M);
}

OrbitalSubset unrank_subset(std::uint64_t rank, int D, int M) {
  check_D(D);
  if (M < 0 || M > D || rank >= kBinom[D][M])
    throw std::invalid_argument("unrank_subset: rank out of range");
  std::uint64_t colex = kBinom[D][M] - 1 - rank;
  Bits bits = 0;
  int q = D - 1;
  for (int j = M; j >= 1; --j) {
    while (kBinom[q][j] > colex) --q;
    colex -= kBinom[q][j];
    bits |= Bits{1} << (D - 1 - q);
    --q;
  }
  return OrbitalSubset(bits, D);
}

std::vector<Bits> all_subsets(int D, int M) {
  check_D(D);
  std::vector<Bits> out;
  if (M < 0 || M > D) return out;
  out.reserve(kBinom[D][M]);
  std::vector<int> pos(M);
  for (int i = 0; i < M; ++i) pos[i] = i;
  while (true) {
    Bits b = 0;
    for (int p : pos) b |= Bits{1} << p;
    out.push_back(b);
    int i = M - 1;
    while (i >= 0 && pos[i] == D - M + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int k = i + 1; k < M; ++k) pos[k] = pos[k - 1] + 1;
  }
  return out;
}

int split_sign(const SlaterDeterminant& sd, const OrbitalSubset& alpha) {
  if (alpha.D() != sd.occupied.D())
    throw std::invalid_argument("split_sign: alpha and determinant have different D");
  if (!alpha.is_subset_of(sd.occupied))
    throw std::invalid_argument("split_sign: alpha is not contained in the determinant");
  return split_sign_bits(sd.occupied.bits(), alpha.bits());
}

FermionState::FermionState(int D, int N, std::vector<Term> terms, double norm_tol)
    : D_(D), N_(N), terms_(std::move(terms)) {
  check_D(D);
  if (N < 0 || N > D)
    throw std::invalid_argument("particle count N=" + std::to_string(N) +
                                " outside [0, D]");
  std::vector<Bits> seen;
  seen.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.det.occupied.D() != D || t.det.N() != N)
      throw std::invalid_argument("determinant does not have N=" +
                                  std::to_string(N) + " orbitals in 1.." +
                                  std::to_string(D));
    if (t.amplitude == Complex{})
      throw std::invalid_argument("zero amplitude in state");
    seen.push_back(t.det.occupied.bits());
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("duplicate determinant in state");
  if (std::abs(norm_squared() - 1.0) > norm_tol)
    throw std::invalid_argument("state is not normalized: norm^2 = " +
                                std::to_string(norm_squared()));
}

FermionState FermionState::normalized(int D, int N, std::vector<Term> terms) {
  std::erase_if(terms, [](const Term& t) { return t.amplitude == Complex{}; });
  double s = 0.0;
  for (const auto& t : terms) s += std::norm(t.amplitude);
  if (!(s > 0.0)) throw std::invalid_argument("cannot normalize a zero state");
  const double scale = 1.0 / std::sqrt(s);
  for (auto& t : terms) t.amplitude *= scale;
  return FermionState(D, N, std::move(terms));
}

double FermionState::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::norm(t.amplitude);
  return s;
}

Complex FermionState::amplitude(Bits occupied) const noexcept {
  for (const auto& t : terms_)
    if (t.det.occupied.bits() == occupied) return t.amplitude;
  return {};
}

}  // namespace fermient
