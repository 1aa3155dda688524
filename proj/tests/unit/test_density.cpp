// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "fermient/density.hpp"
#include "fermient/errors.hpp"
#include "fermient/reference_states.hpp"
#include "oracles.hpp"

using namespace fermient;

namespace {

const double kLn2 = std::numbers::ln2;

FermionState single_sd(std::initializer_list<int> orb, int D) {
  return FermionState(D, static_cast<int>(orb.size()),
                      {{SlaterDeterminant{OrbitalSubset::from_orbitals(orb, D)}, 1.0}});
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

void expect_dm_invariants(const FermionState& s, int M) {
  DensityMatrix dm = build_dm(s, M);
  EXPECT_LT(dm.entries.hermitian_defect(), 1e-12);
  EXPECT_NEAR(dm.entries.trace().real(), static_cast<double>(binomial(s.N(), M)), 1e-10);
  const auto& sp = cache_spectrum(dm);
  for (double x : sp) EXPECT_GE(x, -1e-10);
}

}  // namespace

TEST(Gamma, SingleDeterminantAntisymmetry) {
  const auto g = build_gamma(single_sd({1, 2}, 4), 1);
  ASSERT_EQ(g.entries.rows(), 4u);
  ASSERT_EQ(g.entries.cols(), 4u);
  int nonzero = 0;
  for (const auto& z : g.entries.data()) nonzero += z != Complex{};
  EXPECT_EQ(nonzero, 2);
  EXPECT_EQ(g.entries(0, 1), Complex(1.0));
  EXPECT_EQ(g.entries(1, 0), Complex(-1.0));
  EXPECT_LT(g.frobenius_defect(), 1e-12);
  EXPECT_THROW(build_gamma(single_sd({1, 2}, 4), 0), std::invalid_argument);
  EXPECT_THROW(build_gamma(single_sd({1, 2}, 4), 2), std::invalid_argument);
}

TEST(Gamma, GhzGivesHalfIdentity) {
  const auto g = build_gamma(build_ghz(4, 2), 1);
  const CMatrix r = g.entries * g.entries.adjoint();
  EXPECT_LT(max_abs_diff(r, [] {
              CMatrix h = CMatrix::identity(4);
              for (auto& z : h.data()) z *= 0.5;
              return h;
            }()),
            1e-15);
}

TEST(DensityMatrix, MatchesOperatorActionOracle) {
  std::mt19937_64 rng(41);
  for (auto [D, N] : {std::pair{6, 3}, {5, 2}, {6, 4}, {4, 3}}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto s = oracle::random_state(D, N, rng, trial == 0 ? 3 : 0);
      for (int M = 1; M < N; ++M) {
        const auto dm = build_dm(s, M);
        EXPECT_LT(max_abs_diff(dm.entries, oracle::density_matrix(s, M)), 1e-12)
            << "D=" << D << " N=" << N << " M=" << M;
      }
    }
  }
}

TEST(DensityMatrix, ThreadedBuildIsIdentical) {
  std::mt19937_64 rng(43);
  const auto s = oracle::random_state(10, 4, rng);
  const auto a = build_dm(s, 2, 1), b = build_dm(s, 2, 3);
  EXPECT_EQ(a.entries.data(), b.entries.data());
}

TEST(DensityMatrix, InvariantsOnRandomAndReferenceStates) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 5; ++t) {
    const auto s = oracle::random_state(8, 4, rng, 5 + 10 * t);
    for (int M = 1; M < 4; ++M) expect_dm_invariants(s, M);
  }
  for (int M = 1; M < 4; ++M) {
    expect_dm_invariants(build_ghz(8, 2), M);
    expect_dm_invariants(build_paired_state(8, 2), M);
  }
}

TEST(Spectrum, SlaterDeterminant) {
  auto dm = build_dm(single_sd({2, 4}, 5), 1);
  const auto sp = spectrum(dm);
  ASSERT_EQ(sp.size(), 5u);
  EXPECT_NEAR(sp[0], 1, 1e-12);
  EXPECT_NEAR(sp[1], 1, 1e-12);
  for (int i = 2; i < 5; ++i) EXPECT_EQ(sp[i], 0.0);
  const auto s3 = single_sd({1, 3, 4, 6}, 7);
  for (int M = 1; M < 4; ++M) {
    auto d = build_dm(s3, M);
    EXPECT_NEAR(entropy(d), 0.0, 1e-12);
    EXPECT_NEAR(normalized_entropy(d), std::log(static_cast<double>(binomial(4, M))), 1e-12);
    const auto v = spectrum(d);
    for (std::size_t i = 0; i < v.size(); ++i)
      EXPECT_NEAR(v[i], i < binomial(4, M) ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Entropy, GhzValues) {
  const auto s = build_ghz(8, 2);
  EXPECT_NEAR(entropy(build_dm(s, 1)), 4 * kLn2, 1e-12);
  EXPECT_NEAR(entropy(build_dm(s, 2)), 6 * kLn2, 1e-12);
  EXPECT_NEAR(entropy(build_dm(s, 3)), 4 * kLn2, 1e-12);
  EXPECT_NEAR(normalized_entropy(build_dm(s, 2)), kLn2 + std::log(6.0), 1e-12);
  const auto r3 = build_ghz(6, 3);
  const auto dm = build_dm(r3, 1);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      EXPECT_NEAR(std::abs(dm.entries(i, j) - (i == j ? 1.0 / 3 : 0.0)), 0.0, 1e-15);
}

TEST(Entropy, MaxEntropyClosedForm) {
  EXPECT_NEAR(max_entropy(13, 4, 2), 6 * std::log(13.0), 1e-12);
  EXPECT_NEAR(max_entropy(10, 3, 1), 3 * std::log(10.0 / 3), 1e-12);
  EXPECT_NEAR(max_entropy(7, 3, 3), std::log(35.0), 1e-12);
}

TEST(Entropy, RejectsNegativeEigenvalues) {
  EXPECT_THROW(entropy_from_spectrum({0.5, 0.6, -1e-6}), NumericalFailure);
  EXPECT_NEAR(entropy_from_spectrum({0.5, 0.5, 0.0}), kLn2, 1e-15);
}

TEST(ReferenceStates, GhzAndPairedShapes) {
  const auto g = build_ghz(4, 2);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(std::abs(g.amplitude(0b0011)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(g.amplitude(0b1100)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(build_ghz(5, 2), std::invalid_argument);
  EXPECT_EQ(build_ghz(2, 1).size(), 1u);
  const auto p = build_paired_state(8, 2);
  EXPECT_EQ(p.size(), 6u);
  EXPECT_THROW(build_paired_state(7, 1), std::invalid_argument);
  EXPECT_THROW(build_paired_state(8, 5), std::invalid_argument);
  const auto p1 = build_paired_state(4, 1);
  EXPECT_NEAR(std::abs(p1.amplitude(0b0011)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(p1.amplitude(0b1100)), 1 / std::sqrt(2.0), 1e-15);
}

TEST(ReferenceStates, PairedStateMatchesPairOperatorExpansion) {
  // (A+)^k |0> with A+ = sum_i c+_{2i-1} c+_{2i}
  const int D = 8, k = 2;
  oracle::FockVec v{{Bits{0}, Complex(1.0)}};
  for (int step = 0; step < k; ++step) {
    oracle::FockVec next;
    for (int i = 1; i <= D / 2; ++i) {
      const auto w = oracle::create(2 * i - 1, oracle::create(2 * i, v));
      for (const auto& [o, a] : w) next[o] += a;
    }
    v = next;
  }
  double n = 0;
  for (const auto& [o, a] : v) n += std::norm(a);
  const auto p = oracle::to_fock(build_paired_state(D, k));
  for (const auto& [o, a] : v) {
    if (std::abs(a) < 1e-14) continue;
    EXPECT_NEAR(std::abs(p.at(o) - a / std::sqrt(n)), 0.0, 1e-14);
  }
}

TEST(ReferenceStates, PairedDiffersFromGhzAtTwoBody) {
  auto a = build_dm(build_paired_state(8, 2), 2), b = build_dm(build_ghz(8, 2), 2);
  const auto sa = spectrum(a), sb = spectrum(b);
  double d = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) d = std::max(d, std::abs(sa[i] - sb[i]));
  EXPECT_GT(d, 1e-3);
  const auto r1 = build_dm(build_paired_state(8, 2), 1);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      EXPECT_NEAR(std::abs(r1.entries(i, j) - (i == j ? 0.5 : 0.0)), 0.0, 1e-12);
}

TEST(RotateBasis, IdentityAndTwoByTwoDeterminant) {
  std::mt19937_64 rng(53);
  const auto s = oracle::random_state(6, 3, rng);
  const auto same = rotate_basis(s, CMatrix::identity(6));
  for (const auto& t : s.terms()) EXPECT_NEAR(std::abs(same.amplitude(t.det.occupied.bits()) - t.amplitude), 0, 1e-14);
  CMatrix u = CMatrix::identity(4);
  const auto u2 = oracle::random_unitary(2, rng);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) u(i, j) = u2(i, j);
  const auto r = rotate_basis(single_sd({1, 2}, 4), u);
  ASSERT_EQ(r.size(), 1u);
  const Complex det = u2(0, 0) * u2(1, 1) - u2(0, 1) * u2(1, 0);
  EXPECT_NEAR(std::abs(r.amplitude(0b11) - det), 0.0, 1e-12);
  CMatrix bad = CMatrix::identity(4);
  bad(0, 0) = 2.0;
  EXPECT_THROW(rotate_basis(s, CMatrix::identity(5)), std::invalid_argument);
  EXPECT_THROW(rotate_basis(single_sd({1, 2}, 4), bad), std::invalid_argument);
}

// c+_i -> sum_k u_ik c+_k applied by operator action.
TEST(RotateBasis, AgreesWithOperatorSubstitution) {
  std::mt19937_64 rng(59);
  const int D = 5, N = 2;
  const auto s = oracle::random_state(D, N, rng);
  const auto u = oracle::random_unitary(D, rng);
  oracle::FockVec ref;
  for (const auto& t : s.terms()) {
    oracle::FockVec v{{Bits{0}, t.amplitude}};
    const auto orb = t.det.occupied.orbitals();
    for (auto it = orb.rbegin(); it != orb.rend(); ++it) {
      oracle::FockVec next;
      for (int k = 1; k <= D; ++k) {
        auto w = oracle::create(k, v);
        for (auto& [o, a] : w) next[o] += u(*it - 1, k - 1) * a;
      }
      v = next;
    }
    for (const auto& [o, a] : v) ref[o] += a;
  }
  const auto r = rotate_basis(s, u);
  for (const auto& [o, a] : ref) EXPECT_NEAR(std::abs(r.amplitude(o) - a), 0.0, 1e-12);
}

TEST(RotateBasis, SpectrumInvariance) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 4; ++t) {
    const auto s = oracle::random_state(7, 3, rng, 6);
    const auto u = oracle::random_unitary(7, rng);
    const auto r = rotate_basis(s, u);
    for (int M = 1; M < 3; ++M) {
      auto a = build_dm(s, M), b = build_dm(r, M);
      const auto sa = spectrum(a), sb = spectrum(b);
      for (std::size_t i = 0; i < sa.size(); ++i) EXPECT_NEAR(sa[i], sb[i], 1e-8);
    }
  }
}

TEST(SpectraMatch, ComplementaryCuts) {
  EXPECT_TRUE(spectra_match(build_ghz(8, 2), 1).match);
  EXPECT_TRUE(spectra_match(single_sd({1, 2, 5}, 6), 1).match);
  std::mt19937_64 rng(67);
  for (int t = 0; t < 10; ++t) {
    const auto s = oracle::random_state(8, 4, rng);
    const auto m = spectra_match(s, 1);
    EXPECT_TRUE(m.match);
    EXPECT_LT(m.max_deviation, 1e-8);
  }
}

TEST(Subadditivity, SlaterDeterminantClosedForm) {
  const auto s = single_sd({1, 2, 3, 4}, 8);
  const auto r = check_subadditivity(s, 1, 1);
  EXPECT_TRUE(r.subadditive);
  EXPECT_NEAR(r.slack, 2 * std::log(4.0) - std::log(6.0), 1e-12);
  const auto g = check_subadditivity(build_ghz(8, 2), 1, 1, 1);
  EXPECT_TRUE(g.subadditive);
  ASSERT_TRUE(g.strong.has_value());
  EXPECT_TRUE(*g.strong);
  EXPECT_FALSE(check_subadditivity(build_ghz(8, 2), 2, 2, 1).strong.has_value());
}

TEST(ParticleHole, DualSpectraAndInvolution) {
  std::mt19937_64 rng(71);
  const auto s = oracle::random_state(7, 3, rng, 8);
  const auto d = particle_hole_dual(s);
  EXPECT_EQ(d.N(), 4);
  const auto dd = particle_hole_dual(d);
  for (const auto& t : s.terms())
    EXPECT_NEAR(std::abs(dd.amplitude(t.det.occupied.bits())), std::abs(t.amplitude), 1e-14);
}

TEST(VerifyMaximal, GhzAndOutOfRange) {
  const auto g = build_ghz(8, 2);
  EXPECT_TRUE(verify_maximal(g, 1, 1e-10).maximal);
  EXPECT_FALSE(verify_maximal(g, 2, 1e-10).maximal);
  EXPECT_FALSE(verify_maximal(g, 0, 1e-10).maximal);
}

TEST(Determinant, KnownValues) {
  CMatrix a(3, 3);
  const double v[9] = {2, -1, 0, -1, 2, -1, 0, -1, 2};
  for (int i = 0; i < 9; ++i) a.data()[i] = v[i];
  EXPECT_NEAR(std::abs(determinant(a) - 4.0), 0, 1e-13);
  EXPECT_EQ(determinant(CMatrix(0, 0)), Complex(1.0));
}
