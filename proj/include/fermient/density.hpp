// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file density.hpp
 * @brief M-body reduced density matrices, spectra and entropies.
 *
 * Gamma^(M) is the C(D,M) x C(D,N-M) matrix with rows indexed by the rank of
 * an M-subset alpha and columns by the rank of the complementary (N-M)-subset
 * beta of each determinant. rho^(M) = Gamma Gamma^dagger has trace C(N,M).
 * Entropies are in nats.
 */

#pragma once

#include <optional>
#include <vector>

#include "fermient/fock.hpp"
#include "fermient/matrix.hpp"

namespace fermient {

struct GammaMatrix {
  int D = 0;
  int N = 0;
  int M = 0;
  CMatrix entries;

  /// |Frobenius^2 - C(N,M)|; evaluated on demand only.
  double frobenius_defect() const;
};

struct DensityMatrix {
  int D = 0;
  int N = 0;
  int M = 0;
  CMatrix entries;
  std::optional<std::vector<double>> spectrum;  ///< descending, once computed

  std::size_t dim() const noexcept { return entries.rows(); }
};

/// Throws std::invalid_argument unless 1 <= M <= N-1.
GammaMatrix build_gamma(const FermionState& state, int M);

/// rho = Gamma Gamma^dagger. `threads` is forwarded to gram().
DensityMatrix build_dm(const FermionState& state, int M, int threads = 1);

/// Descending eigenvalues; entries in [-1e-10, 0) are clamped to zero.
/// Returns the cached spectrum when present.
std::vector<double> spectrum(const DensityMatrix& dm);

/// Fills dm.spectrum and returns a reference to it.
const std::vector<double>& cache_spectrum(DensityMatrix& dm);

/// -sum lambda ln lambda with 0 ln 0 = 0. Throws NumericalFailure on an
/// eigenvalue below -1e-10.
double entropy_from_spectrum(const std::vector<double>& eigenvalues);
double entropy(const DensityMatrix& dm);

/// C(N,M) ln(C(D,M)/C(N,M)).
double max_entropy(int D, int N, int M);

/// S/C(N,M) + ln C(N,M).
double normalized_entropy(const DensityMatrix& dm);

/// Normalized entropy of rho^(M) for 1 <= M <= N. M = N is a pure state and
/// gives zero.
double normalized_entropy(const FermionState& state, int M, int threads = 1);

struct SpectraMatch {
  bool match = false;
  double max_deviation = 0.0;  ///< infinite when the nonzero counts differ
};

/// Compares the nonzero (> 1e-9) eigenvalues of rho^(M) and rho^(N-M).
SpectraMatch spectra_match(const FermionState& state, int M,
                           double tol = 1e-8);

struct SubadditivityReport {
  bool subadditive = false;
  double slack = 0.0;  ///< S_n(M1) + S_n(M2) - S_n(M1+M2)
  std::optional<bool> strong;
  std::optional<double> strong_slack;
};

/// Evaluates S_n(M1+M2) <= S_n(M1) + S_n(M2) and, when M3 is given and
/// M1+M2+M3 <= N, S_n(M1+M2+M3) <= S_n(M1+M3) + S_n(M2+M3) - S_n(M3).
/// `slack_tol` is the allowed negative slack from round-off.
SubadditivityReport check_subadditivity(const FermionState& state, int M1,
                                        int M2, std::optional<int> M3 = {},
                                        double slack_tol = 1e-9);

struct MaximalCheck {
  bool maximal = false;
  double max_deviation = 0.0;
};

/// Max entrywise deviation of rho^(M) from (C(N,M)/C(D,M)) I. Cases with
/// M < 1 or M >= N report non-maximal with infinite deviation.
MaximalCheck verify_maximal(const FermionState& state, int M, double tol);

}  // namespace fermient
