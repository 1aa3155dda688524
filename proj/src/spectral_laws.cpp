// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/spectral_laws.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fermient/density.hpp"
#include "fermient/errors.hpp"
#include "fermient/fock.hpp"

namespace fermient {

using std::numbers::pi;

AnalyticCurve predicted_moments(int D, int N, int M) {
  if (M < 1 || M > N - 1 || N > D)
    throw std::invalid_argument("predicted_moments: need 1 <= M <= N-1, N <= D");
  const int cut = std::min(M, N - M);
  AnalyticCurve a;
  const double n = static_cast<double>(binomial(D, cut));
  const double m = static_cast<double>(binomial(D, N - cut));
  a.c = n / m;
  a.mu = static_cast<double>(binomial(N, cut)) / n;
  a.sigma = a.mu * std::sqrt(a.c);
  a.xi_minus = std::pow(1.0 - 1.0 / std::sqrt(a.c), 2);
  a.xi_plus = std::pow(1.0 + 1.0 / std::sqrt(a.c), 2);
  return a;
}

double mp_density(double y, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("mp_density: c outside (0, 1]");
  const double xm = std::pow(1.0 - 1.0 / std::sqrt(c), 2);
  const double xp = std::pow(1.0 + 1.0 / std::sqrt(c), 2);
  if (y <= 0.0 || y < xm || y > xp) return 0.0;
  return std::sqrt((y - xm) * (xp - y)) / (2.0 * pi * y);
}

double twl_density(double z, const AnalyticCurve& a) {
  const double s = a.mu * a.c;
  return mp_density(z / s, a.c) / s;
}

double twl_density(double z, int D, int N, int M) {
  return twl_density(z, predicted_moments(D, N, M));
}

double semicircle_density(double z, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("semicircle: sigma must be positive");
  const double d = z - mu;
  const double r2 = 4.0 * sigma * sigma - d * d;
  return r2 <= 0.0 ? 0.0 : std::sqrt(r2) / (2.0 * pi * sigma * sigma);
}

double semicircle_cdf(double z, double mu, double sigma) {
  const double u = (z - mu) / (2.0 * sigma);
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return 0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / pi;
}

double c1_density(double z, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("c1_density: mu must be positive");
  if (z <= 0.0 || z > 4.0 * mu) return 0.0;
  return std::sqrt(z * (4.0 * mu - z)) / (2.0 * pi * mu * z);
}

double c1_cdf(double z, double mu) {
  const double t = z / (4.0 * mu);
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return (2.0 / pi) * (std::sqrt(t * (1.0 - t)) + std::asin(std::sqrt(t)));
}

namespace {

// y = xi- + (xi+ - xi-)(1 - cos theta)/2 removes the square-root endpoints
double mp_theta_integrand(double theta, double xm, double xp) {
  const double half = 0.5 * (xp - xm);
  const double y = xm + half * (1.0 - std::cos(theta));
  const double s = std::sin(theta);
  if (y <= 0.0) return half * half * 2.0 / (2.0 * pi * half);  // theta -> 0 limit at xi- = 0
  return half * half * s * s / (2.0 * pi * y);
}

}  // namespace

MpCdf::MpCdf(double c, int table_size) : c_(c), table_(static_cast<std::size_t>(table_size)) {
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("MpCdf: c outside (0, 1]");
  if (table_size < 2) throw std::invalid_argument("MpCdf: table too small");
  xm_ = std::pow(1.0 - 1.0 / std::sqrt(c), 2);
  xp_ = std::pow(1.0 + 1.0 / std::sqrt(c), 2);
  const double h = pi / (table_size - 1);
  auto f = [&](double t) { return mp_theta_integrand(t, xm_, xp_); };
  table_[0] = 0.0;
  for (int i = 1; i < table_size; ++i)
    table_[i] = table_[i - 1] +
                boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, h * (i - 1), h * i, 0);
}

double MpCdf::operator()(double y) const {
  if (y <= xm_) return 0.0;
  if (y >= xp_) return 1.0;
  const double theta = std::acos(std::clamp(1.0 - 2.0 * (y - xm_) / (xp_ - xm_), -1.0, 1.0));
  const std::size_t last = table_.size() - 1;
  const double h = pi / static_cast<double>(last);
  const std::size_t i = std::min(static_cast<std::size_t>(theta / h), last - 1);
  // cubic Hermite with the exact derivative at both nodes
  const double t = (theta - h * static_cast<double>(i)) / h;
  const double f0 = mp_theta_integrand(h * i, xm_, xp_) * h;
  const double f1 = mp_theta_integrand(h * (i + 1), xm_, xp_) * h;
  const double p0 = table_[i], p1 = table_[i + 1];
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * f0 + (-2 * t3 + 3 * t2) * p1 +
         (t3 - t2) * f1;
}

double mean_entropy_prediction(int D, int N, int M) {
  if (M < 1 || 2 * M > N) throw std::invalid_argument("mean_entropy_prediction: need 1 <= M <= N/2");
  const AnalyticCurve a = predicted_moments(D, N, M);
  const double tr = static_cast<double>(binomial(N, M));
  const double c = 2 * M == N ? 1.0 : a.c;
  return max_entropy(D, N, M) - tr * c / 2.0;
}

namespace {

double integrate01(const auto& f, const char* what) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, 1.0, 20, 1e-13, &err);
  if (!(err < 1e-7) || !std::isfinite(v))
    throw NumericalFailure(std::string(what) + ": quadrature error estimate " + std::to_string(err));
  return v;
}

}  // namespace

double compute_a2() {
  return integrate01(
      [](double x) { return 0.25 * x * std::log(x) * c1_density(x, 0.25); }, "a2");
}

double compute_a1() {
  return integrate01([](double x) { return 0.25 * x * c1_density(x, 0.25); }, "a1");
}

}  // namespace fermient
