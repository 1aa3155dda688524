// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral_laws.hpp
 * @brief Limiting eigenvalue densities of trace-fixed Wishart matrices.
 *
 * With n = C(D,M), m = C(D,N-M) and the smaller of M, N-M as the cut,
 * c = n/m, mu = C(N,M)/n and sigma = mu sqrt(c). The rescaled
 * Marchenko-Pastur law lives on mu c [xi-, xi+], xi+- = (1 +- 1/sqrt(c))^2.
 */

#pragma once

#include <algorithm>
#include <vector>

namespace fermient {

struct AnalyticCurve {
  double mu = 0.0;
  double sigma = 0.0;
  double c = 0.0;
  double xi_minus = 0.0;
  double xi_plus = 0.0;
};

AnalyticCurve predicted_moments(int D, int N, int M);

/// (1/2 pi y) sqrt((y - xi-)(xi+ - y)) on [xi-, xi+].
double mp_density(double y, double c);

/// mp_density(z / (mu c), c) / (mu c).
double twl_density(double z, int D, int N, int M);
double twl_density(double z, const AnalyticCurve& curve);

/// (1/2 pi sigma^2) sqrt(4 sigma^2 - (z - mu)^2).
double semicircle_density(double z, double mu, double sigma);
double semicircle_cdf(double z, double mu, double sigma);

/// (1/2 pi mu z) sqrt(z (4 mu - z)) on (0, 4 mu].
double c1_density(double z, double mu);
double c1_cdf(double z, double mu);

/// Cumulative distribution of mp_density, tabulated once per instance.
class MpCdf {
 public:
  explicit MpCdf(double c, int table_size = 4096);
  double operator()(double y) const;
  double c() const noexcept { return c_; }

 private:
  double c_, xm_, xp_;
  std::vector<double> table_;  ///< CDF at theta_i = pi i / (size - 1)
};

/// CDF of twl_density for the given curve.
class TwlCdf {
 public:
  explicit TwlCdf(const AnalyticCurve& curve, int table_size = 4096)
      : scale_(curve.mu * curve.c), mp_(curve.c, table_size) {}
  double operator()(double z) const { return mp_(z / scale_); }

 private:
  double scale_;
  MpCdf mp_;
};

/// S_max - C(N,M) c / 2; for c = 1 this is S_max - C(N,M)/2. Needs
/// 1 <= M <= N/2.
double mean_entropy_prediction(int D, int N, int M);

/// (1/4) int_0^1 x ln x P(x) dx with P the c = 1 law at mu = 1/4.
double compute_a2();

/// (1/4) int_0^1 x P(x) dx, equal to 1/16.
double compute_a1();

/// One-sample Kolmogorov-Smirnov statistic of sorted data against a CDF.
template <class Cdf>
double ks_statistic(const std::vector<double>& sorted, const Cdf& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double lo = f - static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n - f;
    d = std::max(d, std::max(lo, hi));
  }
  return d;
}

}  // namespace fermient
