// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Orbital subsets, Slater determinants and N-fermion states.
 *
 * Orbitals are labelled 1..D at the API boundary and stored as bit (i-1) of a
 * 64-bit word, so D is capped at 64. A Slater determinant |i1 ... iN> with
 * i1 < ... < iN is the ket c+_{i1} ... c+_{iN}|0>; amplitudes are stored for
 * this sorted representative only.
 */

#pragma once

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fermient {

using Bits = std::uint64_t;
using Complex = std::complex<double>;

inline constexpr int kMaxOrbitals = 64;

/// Binomial coefficient C(n, k) for 0 <= n <= 64; zero when k < 0 or k > n.
std::uint64_t binomial(int n, int k);

/// Mask with the lowest `count` bits set.
constexpr Bits low_mask(int count) noexcept {
  return count >= 64 ? ~Bits{0} : ((Bits{1} << count) - 1);
}

/// A set of orbitals drawn from {1, ..., D}.
class OrbitalSubset {
 public:
  OrbitalSubset() = default;

  /// Throws std::invalid_argument if D is outside [0, 64] or bits exceed D.
  OrbitalSubset(Bits bits, int D);

  /// Builds from 1-based orbital labels; duplicates or labels outside 1..D
  /// are rejected.
  static OrbitalSubset from_orbitals(std::span<const int> orbitals, int D);
  static OrbitalSubset from_orbitals(std::initializer_list<int> orbitals,
                                     int D) {
    return from_orbitals(std::span<const int>(orbitals.begin(), orbitals.size()),
                         D);
  }

  Bits bits() const noexcept { return bits_; }
  int D() const noexcept { return D_; }
  int size() const noexcept { return std::popcount(bits_); }
  bool empty() const noexcept { return bits_ == 0; }

  /// Ascending 1-based orbital labels.
  std::vector<int> orbitals() const;

  bool contains(int orbital) const noexcept {
    return orbital >= 1 && orbital <= D_ && ((bits_ >> (orbital - 1)) & 1U);
  }
  bool is_subset_of(const OrbitalSubset& other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  /// {1..D} minus this set.
  OrbitalSubset complement() const noexcept {
    return OrbitalSubset(~bits_ & low_mask(D_), D_, Unchecked{});
  }

  friend bool operator==(const OrbitalSubset&, const OrbitalSubset&) = default;
  friend auto operator<=>(const OrbitalSubset&, const OrbitalSubset&) = default;

 private:
  struct Unchecked {};
  OrbitalSubset(Bits bits, int D, Unchecked) noexcept : bits_(bits), D_(D) {}

  Bits bits_ = 0;
  int D_ = 0;
};

/// Lexicographic combinadic rank of an M-subset of {1..D}: {1,2,..,M} -> 0,
/// {D-M+1,..,D} -> C(D,M)-1. Throws std::invalid_argument on size mismatch.
std::uint64_t rank_subset(const OrbitalSubset& subset, int D, int M);

/// Inverse of rank_subset.
OrbitalSubset unrank_subset(std::uint64_t rank, int D, int M);

/// Rank of a raw bitmask without validation. Hot-path variant used by the
/// density-matrix builders.
std::uint64_t rank_bits(Bits bits, int D, int M) noexcept;

/// All M-subsets of {1..D} as bitmasks, in rank order.
std::vector<Bits> all_subsets(int D, int M);

/// One basis ket with N occupied orbitals.
struct SlaterDeterminant {
  OrbitalSubset occupied;

  int N() const noexcept { return occupied.size(); }
  friend bool operator==(const SlaterDeterminant&,
                         const SlaterDeterminant&) = default;
  friend auto operator<=>(const SlaterDeterminant&,
                          const SlaterDeterminant&) = default;
};

/// Parity of the reordering that brings the sorted occupied list into
/// (sorted alpha, sorted rest): c+_{sorted sd} = sign * C+_alpha C+_beta.
/// Throws std::invalid_argument if alpha is not contained in sd or lives on
/// a different D.
int split_sign(const SlaterDeterminant& sd, const OrbitalSubset& alpha);

/// Unchecked bitmask form of split_sign; alpha must be a subset of occupied.
inline int split_sign_bits(Bits occupied, Bits alpha) noexcept {
  const Bits beta = occupied & ~alpha;
  int inversions = 0;
  for (Bits a = alpha; a != 0; a &= a - 1) {
    const Bits below = (a & -a) - 1;
    inversions += std::popcount(beta & below);
  }
  return (inversions & 1) ? -1 : 1;
}

/// Number of orbitals occupied in both determinants.
inline int overlap_count(const SlaterDeterminant& a,
                         const SlaterDeterminant& b) noexcept {
  return std::popcount(a.occupied.bits() & b.occupied.bits());
}

/// Normalized superposition of distinct N-fermion Slater determinants.
class FermionState {
 public:
  struct Term {
    SlaterDeterminant det;
    Complex amplitude;
  };

  FermionState() = default;

  /// Validates the invariants: distinct determinants with N orbitals each in
  /// 1..D, nonzero amplitudes and unit norm within `norm_tol`.
  FermionState(int D, int N, std::vector<Term> terms, double norm_tol = 1e-12);

  /// As the constructor, but rescales the amplitudes to unit norm first and
  /// drops exact zeros.
  static FermionState normalized(int D, int N, std::vector<Term> terms);

  int D() const noexcept { return D_; }
  int N() const noexcept { return N_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  double norm_squared() const noexcept;

  /// Amplitude of the determinant with the given occupation, zero if absent.
  Complex amplitude(Bits occupied) const noexcept;

 private:
  int D_ = 0;
  int N_ = 0;
  std::vector<Term> terms_;
};

}  // namespace fermient

template <>
struct std::hash<fermient::OrbitalSubset> {
  std::size_t operator()(const fermient::OrbitalSubset& s) const noexcept {
    return std::hash<fermient::Bits>{}(s.bits()) ^
           (static_cast<std::size_t>(s.D()) << 58);
  }
};
