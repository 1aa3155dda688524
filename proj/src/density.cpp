// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fermient/eigen.hpp"
#include "fermient/errors.hpp"

namespace fermient {
namespace {

constexpr double kClamp = 1e-10;

void check_cut(int N, int M) {
  if (M < 1 || M > N - 1)
    throw std::invalid_argument("cut size M=" + std::to_string(M) +
                                " outside [1, N-1] for N=" + std::to_string(N));
}

}  // namespace

double GammaMatrix::frobenius_defect() const {
  return std::abs(entries.frobenius_squared() -
                  static_cast<double>(binomial(N, M)));
}

GammaMatrix build_gamma(const FermionState& state, int M) {
  const int D = state.D(), N = state.N();
  check_cut(N, M);
  GammaMatrix g{D, N, M, CMatrix(binomial(D, M), binomial(D, N - M))};
  const std::vector<Bits> picks = all_subsets(N, M);
  int pos[kMaxOrbitals];
  for (const auto& term : state.terms()) {
    const Bits occ = term.det.occupied.bits();
    int k = 0;
    for (Bits b = occ; b != 0; b &= b - 1) pos[k++] = std::countr_zero(b);
    for (Bits pick : picks) {
      Bits alpha = 0;
      for (Bits p = pick; p != 0; p &= p - 1) alpha |= Bits{1} << pos[std::countr_zero(p)];
      const Bits beta = occ & ~alpha;
      const int sign = split_sign_bits(occ, alpha);
      g.entries(rank_bits(alpha, D, M), rank_bits(beta, D, N - M)) +=
          static_cast<double>(sign) * term.amplitude;
    }
  }
  return g;
}

DensityMatrix build_dm(const FermionState& state, int M, int threads) {
  GammaMatrix g = build_gamma(state, M);
  return DensityMatrix{g.D, g.N, g.M, gram(g.entries, threads), std::nullopt};
}

std::vector<double> spectrum(const DensityMatrix& dm) {
  if (dm.spectrum) return *dm.spectrum;
  std::vector<double> ev = hermitian_eigenvalues(dm.entries);
  for (double& x : ev)
    if (x < 0.0 && x >= -kClamp) x = 0.0;
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

const std::vector<double>& cache_spectrum(DensityMatrix& dm) {
  if (!dm.spectrum) dm.spectrum = spectrum(dm);
  return *dm.spectrum;
}

double entropy_from_spectrum(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double x : eigenvalues) {
    if (x < -kClamp)
      throw NumericalFailure("negative eigenvalue " + std::to_string(x) +
                             " in density matrix");
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

double entropy(const DensityMatrix& dm) { return entropy_from_spectrum(spectrum(dm)); }

double max_entropy(int D, int N, int M) {
  const double cn = static_cast<double>(binomial(N, M));
  return cn * std::log(static_cast<double>(binomial(D, M)) / cn);
}

double normalized_entropy(const DensityMatrix& dm) {
  const double cn = static_cast<double>(binomial(dm.N, dm.M));
  return entropy(dm) / cn + std::log(cn);
}

double normalized_entropy(const FermionState& state, int M, int threads) {
  if (M == state.N()) return 0.0;
  return normalized_entropy(build_dm(state, M, threads));
}

SpectraMatch spectra_match(const FermionState& state, int M, double tol) {
  auto nonzero = [&](int m) {
    std::vector<double> ev = spectrum(build_dm(state, m));
    std::erase_if(ev, [](double x) { return x <= 1e-9; });
    return ev;
  };
  const std::vector<double> a = nonzero(M), b = nonzero(state.N() - M);
  SpectraMatch out;
  if (a.size() != b.size()) {
    out.max_deviation = std::numeric_limits<double>::infinity();
    return out;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    out.max_deviation = std::max(out.max_deviation, std::abs(a[i] - b[i]));
  out.match = out.max_deviation < tol;
  return out;
}

SubadditivityReport check_subadditivity(const FermionState& state, int M1,
                                        int M2, std::optional<int> M3,
                                        double slack_tol) {
  const int N = state.N();
  if (M1 < 1 || M2 < 1 || M1 + M2 > N)
    throw std::invalid_argument("subadditivity needs M1, M2 >= 1 and M1+M2 <= N");
  auto sn = [&](int m) { return normalized_entropy(state, m); };
  SubadditivityReport r;
  r.slack = sn(M1) + sn(M2) - sn(M1 + M2);
  r.subadditive = r.slack >= -slack_tol;
  if (M3 && *M3 >= 1 && M1 + M2 + *M3 <= N) {
    const int m3 = *M3;
    r.strong_slack = sn(M1 + m3) + sn(M2 + m3) - sn(m3) - sn(M1 + M2 + m3);
    r.strong = *r.strong_slack >= -slack_tol;
  }
  return r;
}

MaximalCheck verify_maximal(const FermionState& state, int M, double tol) {
  MaximalCheck out;
  if (M < 1 || M >= state.N()) {
    out.max_deviation = std::numeric_limits<double>::infinity();
    return out;
  }
  const DensityMatrix dm = build_dm(state, M);
  const double mu = static_cast<double>(binomial(state.N(), M)) /
                    static_cast<double>(binomial(state.D(), M));
  for (std::size_t i = 0; i < dm.dim(); ++i)
    for (std::size_t j = 0; j < dm.dim(); ++j) {
      const Complex target = i == j ? Complex(mu) : Complex{};
      out.max_deviation = std::max(out.max_deviation, std::abs(dm.entries(i, j) - target));
    }
  out.maximal = out.max_deviation < tol;
  return out;
}

}  // namespace fermient
