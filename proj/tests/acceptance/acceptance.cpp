// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fermient/density.hpp"
#include "fermient/ensemble.hpp"
#include "fermient/hypergraph.hpp"
#include "fermient/rational_lp.hpp"
#include "fermient/reference_states.hpp"
#include "fermient/search.hpp"
#include "fermient/spectral_laws.hpp"
#include "oracles.hpp"

using namespace fermient;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [" << what << "]";
    }
  }
};

int failures = 0;

void run(int id, const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.note << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!c.ok) ++failures;
  std::printf("[%s] %2d %s (%.1f s)%s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              c.note.str().c_str());
  std::fflush(stdout);
}

double ln_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double choose(int n, int k) { return std::exp(ln_choose(n, k)); }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

std::string cell(int D, int N, int M) {
  return "(" + std::to_string(D) + "," + std::to_string(N) + "," + std::to_string(M) + ")";
}

struct Window {
  std::map<std::tuple<int, int, int>, ExistenceVerdict> verdicts;
  bool filled = false;
};

Window window;

constexpr int kWindowD = 13;
constexpr double kCellSeconds = 90.0;

void fill_window() {
  if (window.filled) return;
  SearchOptions opt;
  opt.enumeration.budget_seconds = kCellSeconds;
  opt.enumeration.threads = 0;
  for (int M = 1; M <= 2; ++M)
    for (int D = M + 1; D <= kWindowD; ++D)
      for (int N = M + 1; N <= D; ++N) window.verdicts[{D, N, M}] = search_maximal_state(D, N, M, opt);
  window.filled = true;
}

std::vector<std::pair<std::tuple<int, int, int>, const FermionState*>> found_states() {
  std::vector<std::pair<std::tuple<int, int, int>, const FermionState*>> out;
  for (const auto& [key, v] : window.verdicts)
    if (v.kind == VerdictKind::ExistsWithState && v.state) out.emplace_back(key, &*v.state);
  return out;
}

}  // namespace

int main() {
  std::mt19937_64 rng(20260101);

  run(1, "GHZ entropies", [](Check& c) {
    const auto s = build_ghz(8, 2);
    const double s1 = entropy(build_dm(s, 1)), s2 = entropy(build_dm(s, 2));
    c.expect(std::abs(s1 - 4 * std::numbers::ln2) < 1e-9, "S1=" + std::to_string(s1));
    c.expect(std::abs(s2 - 6 * std::numbers::ln2) < 1e-9, "S2=" + std::to_string(s2));
  });

  run(2, "paired state", [](Check& c) {
    const auto p = build_paired_state(8, 2);
    const auto dm = build_dm(p, 1);
    CMatrix half = CMatrix::identity(8);
    for (auto& x : half.data()) x *= 0.5;
    c.expect(max_abs_diff(dm.entries, half) < 1e-10, "rho1 != I/2");
    const auto sp = spectrum(build_dm(p, 2)), sg = spectrum(build_dm(build_ghz(8, 2), 2));
    double diff = 0;
    for (std::size_t i = 0; i < sp.size(); ++i) diff = std::max(diff, std::abs(sp[i] - sg[i]));
    c.expect(sp.size() == sg.size() && diff > 1e-3, "rho2 spectra coincide");
  });

  run(3, "oracle equivalence", [&](Check& c) {
    double worst = 0;
    for (int D = 2; D <= 6; ++D)
      for (int N = 2; N <= std::min(4, D); ++N)
        for (int M = 1; M <= N - 1; ++M)
          for (int t = 0; t < 20; ++t) {
            const auto s = oracle::random_state(D, N, rng);
            const double d = max_abs_diff(build_dm(s, M).entries, oracle::density_matrix(s, M));
            worst = std::max(worst, d);
            if (d >= 1e-12) c.expect(false, cell(D, N, M) + " dev=" + std::to_string(d));
          }
    c.note << " max_dev=" << worst;
  });

  run(4, "basis invariance and Schmidt symmetry", [&](Check& c) {
    double worst_rot = 0, worst_pair = 0;
    for (int t = 0; t < 20; ++t) {
      const auto s = oracle::random_state(8, 4, rng);
      std::vector<std::vector<double>> base;
      for (int M = 1; M <= 3; ++M) base.push_back(spectrum(build_dm(s, M)));
      for (int u = 0; u < 5; ++u) {
        const auto r = rotate_basis(s, oracle::random_unitary(8, rng));
        for (int M = 1; M <= 3; ++M) {
          const auto sp = spectrum(build_dm(r, M));
          for (std::size_t i = 0; i < sp.size(); ++i)
            worst_rot = std::max(worst_rot, std::abs(sp[i] - base[M - 1][i]));
        }
      }
      for (int M = 1; M <= 3; ++M) {
        const auto m = spectra_match(s, M, 1e-8);
        c.expect(m.match, "pair mismatch M=" + std::to_string(M));
        worst_pair = std::max(worst_pair, m.max_deviation);
      }
    }
    c.expect(worst_rot < 1e-8, "rotation dev=" + std::to_string(worst_rot));
    c.note << " rot_dev=" << worst_rot << " pair_dev=" << worst_pair;
  });

  run(5, "search window D<=13, M=1,2", [](Check& c) {
    fill_window();
    const auto& V = window.verdicts;
    // (a) N=2, M=1 follows the parity of D for D >= 3
    for (int D = 3; D <= kWindowD; ++D) {
      const auto k = V.at({D, 2, 1}).kind;
      const bool exists = k == VerdictKind::ExistsWithState;
      const bool settled = k != VerdictKind::Unknown;
      c.expect(settled && exists == (D % 2 == 0), "parity at D=" + std::to_string(D));
    }
    // (b) thirteen determinants with equal weights
    const auto& b = V.at({13, 4, 2});
    c.expect(b.kind == VerdictKind::ExistsWithState && b.state, "(13,4,2) not found");
    if (b.state) {
      c.expect(b.state->size() == 13, "(13,4,2) size");
      double amp = 0;
      for (const auto& t : b.state->terms())
        amp = std::max(amp, std::abs(std::abs(t.amplitude) - 1 / std::sqrt(13.0)));
      c.expect(amp < 1e-12, "(13,4,2) amplitudes");
      const auto dm = build_dm(*b.state, 2);
      CMatrix target = CMatrix::identity(78);
      for (auto& x : target.data()) x *= 6.0 / 78;
      c.expect(max_abs_diff(dm.entries, target) < 1e-10, "(13,4,2) rho2");
    }
    // (c)
    c.expect(V.at({10, 5, 2}).kind == VerdictKind::ExhaustedNoSolution, "(10,5,2) not exhausted");
    // (d) N <-> D-N
    int unknown = 0;
    for (const auto& [key, v] : V) {
      const auto [D, N, M] = key;
      if (v.kind == VerdictKind::Unknown) {
        ++unknown;
        c.note << " unknown" << cell(D, N, M);
      }
      const int dual = D - N;
      if (dual < M + 1) continue;
      const auto& w = V.at({D, dual, M});
      if (w.kind != v.kind)
        c.expect(false, "asymmetric " + cell(D, N, M) + " " + to_string(v.kind) + " vs " + to_string(w.kind));
    }
    c.note << " cells=" << V.size() << " unknown=" << unknown << " budget=" << kCellSeconds << "s";
  });

  run(6, "nesting and particle-hole of found states", [](Check& c) {
    fill_window();
    int n = 0;
    for (const auto& [key, s] : found_states()) {
      const auto [D, N, M] = key;
      for (const auto& e : nesting_check(*s, M, 1e-9))
        c.expect(e.maximal, "nesting " + cell(D, N, M) + " at M'=" + std::to_string(e.M));
      const auto dual = particle_hole_dual(*s);
      c.expect(dual.N() == D - N, "dual N");
      c.expect(verify_maximal(dual, M, 1e-9).maximal, "dual " + cell(D, N, M));
      ++n;
    }
    c.expect(n > 0, "no states found");
    c.note << " states=" << n;
  });

  run(7, "design theorem", [](Check& c) {
    std::ifstream in(std::string(FERMIENT_DATA_DIR) + "/pg2_3.hg");
    c.expect(bool(in), "cannot open bundled design");
    const auto hg = read_hypergraph(in);
    const auto p = FeasibilityProblem::from_hypergraph(hg, 2);
    c.expect(p.rhs == mpq_class(1, 13), "rhs");
    const auto u = uniform_vector(hg.size());
    c.expect(u.size() == 13 && u[0] == mpq_class(1, 13), "uniform vector");
    c.expect(p.satisfied_by(u), "uniform not a solution on design");
    const auto sol = lp_feasible(p);
    c.expect(sol && sol->x == u, "LP solution differs from uniform");

    // Fano plane is a 2-design; dropping one line leaves unequal pair counts.
    const std::vector<std::vector<int>> fano = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6},
                                                {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
    std::vector<Bits> lines;
    for (const auto& l : fano) lines.push_back(OrbitalSubset::from_orbitals(l, 7).bits());
    const Hypergraph full(7, 3, lines);
    c.expect(is_t_design(full, 2).value_or(0) == 1, "fano not a design");
    const auto pf = FeasibilityProblem::from_hypergraph(full, 1);
    c.expect(pf.satisfied_by(uniform_vector(7)), "fano uniform rejected");
    lines.pop_back();
    const Hypergraph cut(7, 3, lines);
    c.expect(satisfies_overlap(cut, 1), "cut not admissible");
    c.expect(!is_t_design(cut, 2).has_value(), "cut is a design");
    const auto pc = FeasibilityProblem::from_hypergraph(cut, 1);
    c.expect(!pc.satisfied_by(uniform_vector(6)), "uniform accepted on non-design");
  });

  run(8, "semicircle regime", [](Check& c) {
    const auto r = run_ensemble({.D = 50, .N = 4, .M = 1, .realizations = 1000, .seed = 8, .threads = 0});
    const double mu = 4.0 / 50, cc = 50 / choose(50, 3), sigma = mu * std::sqrt(cc);
    c.expect(std::abs(r.empirical_mean / mu - 1) < 0.01, "mean");
    c.expect(std::abs(r.empirical_std / sigma - 1) < 0.05, "std");
    c.expect(r.ks_semicircle < 0.05, "ks");
    c.note << " mean=" << r.empirical_mean << " std=" << r.empirical_std << " sigma=" << sigma
           << " ks=" << r.ks_semicircle;
    for (int D : {20, 30, 40}) {
      const auto q = run_ensemble({.D = D, .N = 4, .M = 1, .realizations = 300, .seed = 8, .threads = 0});
      const double s = 4.0 / D * std::sqrt(D / choose(D, 3));
      c.expect(std::abs(q.empirical_std / s - 1) < 0.10, "std track D=" + std::to_string(D));
      c.note << " D" << D << ":" << q.empirical_std / s;
    }
  });

  run(9, "c=1 regime", [](Check& c) {
    const auto r = run_ensemble({.D = 20, .N = 4, .M = 2, .realizations = 400, .seed = 9, .threads = 0});
    const double mu = 6 / choose(20, 2);
    c.expect(std::abs(r.curve.c - 1) < 1e-15 && std::abs(r.curve.mu - mu) < 1e-15, "moments");
    c.expect(r.ks_mp < 0.07, "ks");
    const double s_max = 6 * std::log(choose(20, 2) / 6);
    const double deficit = s_max - r.mean_entropy;
    c.expect(deficit >= 2.85 && deficit <= 3.15, "deficit");
    c.note << " ks=" << r.ks_mp << " deficit=" << deficit;
  });

  run(10, "intermediate c", [](Check& c) {
    const auto r = run_ensemble({.D = 20, .N = 5, .M = 2, .realizations = 400, .seed = 10, .threads = 0});
    c.expect(std::abs(r.curve.c - 1.0 / 6) < 1e-15, "c");
    c.expect(std::abs(r.curve.mu - 0.0526) < 1e-4, "mu");
    c.expect(r.ks_mp < 0.07, "ks");
    c.note << " ks=" << r.ks_mp;
  });

  run(11, "mean entropy convergence", [](Check& c) {
    for (int D : {8, 12, 16, 20}) {
      const auto r = run_ensemble({.D = D, .N = 4, .M = 1, .realizations = 10000, .seed = 11, .threads = 0});
      const double cc = D / choose(D, 3);
      const double pred = 4 * std::log(D / 4.0) - 4 * cc / 2;
      const double rel = std::abs(r.mean_entropy / pred - 1);
      c.expect(rel < 0.02, "D=" + std::to_string(D));
      c.note << " D" << D << ":" << rel;
    }
  });

  run(12, "constants", [](Check& c) {
    c.expect(std::abs(compute_a2() + 0.055393) < 1e-5, "a2");
    c.expect(std::abs(compute_a1() - 1.0 / 16) < 1e-7, "a1");
    c.note << " a2=" << compute_a2();
  });

  run(13, "subadditivity", [&](Check& c) {
    fill_window();
    double worst = std::numeric_limits<double>::infinity();
    auto one = [&](const FermionState& s, const std::string& tag) {
      const auto r = check_subadditivity(s, 1, 1, s.N() >= 3 ? std::optional<int>(1) : std::nullopt);
      c.expect(r.slack >= 0 && r.subadditive, "subadditive " + tag);
      worst = std::min(worst, r.slack);
      if (r.strong) {
        c.expect(*r.strong_slack >= 0 && *r.strong, "strong " + tag);
        worst = std::min(worst, *r.strong_slack);
      }
    };
    for (const auto& [key, s] : found_states()) {
      const auto [D, N, M] = key;
      one(*s, cell(D, N, M));
    }
    for (int t = 0; t < 100; ++t) one(oracle::random_state(8, 4, rng), "random");
    c.note << " min_slack=" << worst;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
