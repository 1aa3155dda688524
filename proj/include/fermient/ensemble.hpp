// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermient/fock.hpp"
#include "fermient/matrix.hpp"
#include "fermient/spectral_laws.hpp"

namespace fermient {

enum class EnsembleKind { FermionicState, TraceFixedWL };

std::string to_string(EnsembleKind kind);

struct EnsembleConfig {
  int D = 0;
  int N = 0;
  int M = 0;
  int realizations = 1;
  std::uint64_t seed = 0;
  int bins = 60;
  EnsembleKind kind = EnsembleKind::FermionicState;
  int threads = 1;  ///< <= 0 uses the OpenMP default

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Gaussian amplitudes (independent N(0,1) real and imaginary parts) on all
/// C(D,N) determinants, normalized.
FermionState sample_random_state(int D, int N, std::uint64_t seed);

/// H n x m with complex standard normal entries, W = H H^dagger scaled to
/// trace `trace`. Needs n <= m.
CMatrix sample_trace_fixed_wl(std::size_t n, std::size_t m, double trace, std::uint64_t seed);

struct SpectralSample {
  std::vector<double> eigenvalues;  ///< descending, structural zeros removed
  double entropy = 0.0;
  double trace = 0.0;               ///< sum over all eigenvalues
};

/// Realization r of cfg, seeded with derive_seed(cfg.seed, r).
SpectralSample sample_realization(const EnsembleConfig& cfg, int r);

struct Histogram {
  std::vector<double> edges;  ///< bins + 1 values
  std::vector<double> empirical_density;
  std::vector<double> analytic_semicircle;
  std::vector<double> analytic_mp;
};

struct EnsembleReport {
  EnsembleConfig config;
  AnalyticCurve curve;
  std::size_t eigenvalue_count = 0;
  double empirical_mean = 0.0;
  double empirical_std = 0.0;
  double mean_entropy = 0.0;
  double S_max = 0.0;
  double predicted_mean_entropy = 0.0;  ///< NaN when M > N/2
  double ks_semicircle = 0.0;
  double ks_mp = 0.0;
  std::string ks_model;  ///< "semicircle" when c < 0.05, else "mp"
  double max_trace_error = 0.0;
  Histogram histogram;
  std::vector<double> entropies;  ///< per realization
};

/// Runs all realizations (in parallel when cfg.threads != 1); the report
/// depends only on cfg. Numerical failures are rethrown naming the
/// realization.
EnsembleReport run_ensemble(const EnsembleConfig& cfg);

/// Serial reference for run_ensemble.
EnsembleReport run_ensemble_serial(const EnsembleConfig& cfg);

}  // namespace fermient
