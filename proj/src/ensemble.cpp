// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>

#include <omp.h>

#include "fermient/density.hpp"
#include "fermient/eigen.hpp"
#include "fermient/errors.hpp"
#include "fermient/rng.hpp"

namespace fermient {

std::string to_string(EnsembleKind kind) {
  return kind == EnsembleKind::FermionicState ? "state" : "wl";
}

void EnsembleConfig::validate() const {
  if (D < 1 || D > kMaxOrbitals) throw std::invalid_argument("ensemble: D outside [1, 64]");
  if (N < 2 || N > D) throw std::invalid_argument("ensemble: need 2 <= N <= D");
  if (M < 1 || M > N - 1) throw std::invalid_argument("ensemble: need 1 <= M <= N-1");
  if (realizations < 1) throw std::invalid_argument("ensemble: realizations must be >= 1");
  if (bins < 1) throw std::invalid_argument("ensemble: bins must be >= 1");
}

FermionState sample_random_state(int D, int N, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::vector<Bits> dets = all_subsets(D, N);
  std::vector<FermionState::Term> terms;
  terms.reserve(dets.size());
  for (Bits d : dets) {
    const double re = rng.normal();
    const double im = rng.normal();
    terms.push_back({SlaterDeterminant{OrbitalSubset(d, D)}, Complex(re, im)});
  }
  return FermionState::normalized(D, N, std::move(terms));
}

CMatrix sample_trace_fixed_wl(std::size_t n, std::size_t m, double trace, std::uint64_t seed) {
  if (n > m) throw std::invalid_argument("trace-fixed WL needs n <= m");
  SplitMix64 rng(seed);
  CMatrix h(n, m);
  for (auto& z : h.data()) {
    const double re = rng.normal();
    z = Complex(re, rng.normal());
  }
  CMatrix w = gram(h, 1);
  const double scale = trace / w.trace().real();
  for (auto& z : w.data()) z *= scale;
  return w;
}

namespace {

std::size_t nonzero_block(const EnsembleConfig& cfg) {
  return std::min(binomial(cfg.D, cfg.M), binomial(cfg.D, cfg.N - cfg.M));
}

}  // namespace

SpectralSample sample_realization(const EnsembleConfig& cfg, int r) {
  const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
  SpectralSample s;
  std::vector<double> ev;
  if (cfg.kind == EnsembleKind::FermionicState) {
    ev = spectrum(build_dm(sample_random_state(cfg.D, cfg.N, seed), cfg.M, 1));
  } else {
    const int cut = std::min(cfg.M, cfg.N - cfg.M);
    const CMatrix w = sample_trace_fixed_wl(binomial(cfg.D, cut), binomial(cfg.D, cfg.N - cut),
                                            static_cast<double>(binomial(cfg.N, cfg.M)), seed);
    ev = hermitian_eigenvalues(w);
    for (double& x : ev)
      if (x < 0.0 && x >= -1e-10) x = 0.0;
  }
  for (double x : ev) s.trace += x;
  s.entropy = entropy_from_spectrum(ev);
  ev.resize(std::min(ev.size(), nonzero_block(cfg)));
  s.eigenvalues = std::move(ev);
  return s;
}

namespace {

EnsembleReport assemble(const EnsembleConfig& cfg, std::vector<SpectralSample>& samples) {
  EnsembleReport rep;
  rep.config = cfg;
  rep.curve = predicted_moments(cfg.D, cfg.N, cfg.M);
  rep.S_max = max_entropy(cfg.D, cfg.N, cfg.M);
  rep.predicted_mean_entropy = 2 * cfg.M <= cfg.N ? mean_entropy_prediction(cfg.D, cfg.N, cfg.M)
                                                  : std::numeric_limits<double>::quiet_NaN();
  const double tr = static_cast<double>(binomial(cfg.N, cfg.M));
  std::vector<double> all;
  double esum = 0.0;
  for (const auto& s : samples) {
    all.insert(all.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    rep.entropies.push_back(s.entropy);
    esum += s.entropy;
    rep.max_trace_error = std::max(rep.max_trace_error, std::abs(s.trace - tr));
  }
  rep.mean_entropy = esum / static_cast<double>(samples.size());
  rep.eigenvalue_count = all.size();
  double mean = 0.0;
  for (double x : all) mean += x;
  mean /= static_cast<double>(all.size());
  double var = 0.0;
  for (double x : all) var += (x - mean) * (x - mean);
  var /= static_cast<double>(all.size());
  rep.empirical_mean = mean;
  rep.empirical_std = std::sqrt(var);

  std::sort(all.begin(), all.end());
  const AnalyticCurve& a = rep.curve;
  rep.ks_semicircle =
      ks_statistic(all, [&](double z) { return semicircle_cdf(z, a.mu, a.sigma); });
  const TwlCdf twl(a);
  rep.ks_mp = ks_statistic(all, twl);
  rep.ks_model = a.c < 0.05 ? "semicircle" : "mp";

  const bool broad = 2 * std::min(cfg.M, cfg.N - cfg.M) == cfg.N;
  const double lo = broad ? 0.0 : std::max(0.0, a.mu - 3.0 * rep.empirical_std);
  const double hi = broad ? 4.0 * a.mu * 1.05 : a.mu + 3.0 * rep.empirical_std;
  Histogram& h = rep.histogram;
  const double width = (hi - lo) / cfg.bins;
  std::vector<double> counts(cfg.bins, 0.0);
  for (double x : all) {
    if (x < lo || x > hi) continue;
    const int b = std::min(cfg.bins - 1, static_cast<int>((x - lo) / width));
    counts[b] += 1.0;
  }
  for (int b = 0; b <= cfg.bins; ++b) h.edges.push_back(lo + width * b);
  for (int b = 0; b < cfg.bins; ++b) {
    const double mid = lo + width * (b + 0.5);
    h.empirical_density.push_back(counts[b] / (static_cast<double>(all.size()) * width));
    h.analytic_semicircle.push_back(semicircle_density(mid, a.mu, a.sigma));
    h.analytic_mp.push_back(twl_density(mid, a));
  }
  return rep;
}

EnsembleReport run(const EnsembleConfig& cfg, int threads) {
  cfg.validate();
  std::vector<SpectralSample> samples(static_cast<std::size_t>(cfg.realizations));
  std::exception_ptr error;
  int failed = -1;
  std::mutex mu;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt) if (nt > 1)
  for (int r = 0; r < cfg.realizations; ++r) {
    try {
      samples[r] = sample_realization(cfg, r);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (failed < 0 || r < failed) {
        failed = r;
        error = std::current_exception();
      }
    }
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw NumericalFailure("realization " + std::to_string(failed) + ": " + e.what());
    }
  }
  return assemble(cfg, samples);
}

}  // namespace

EnsembleReport run_ensemble(const EnsembleConfig& cfg) { return run(cfg, cfg.threads); }

EnsembleReport run_ensemble_serial(const EnsembleConfig& cfg) { return run(cfg, 1); }

}  // namespace fermient
