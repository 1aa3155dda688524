// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "fermient/density.hpp"
#include "fermient/errors.hpp"
#include "fermient/reference_states.hpp"

namespace fermient {

ClassificationResult classify_existence(int D, int N, int M) {
  if (M < 1 || N < 1 || N > D || D > kMaxOrbitals)
    throw std::invalid_argument("classify_existence: need 1 <= M, 1 <= N <= D <= 64");
  if (N < 2 * M) return {Classification::NotExists, "N < 2M"};
  if (N > D - 2 * M) return {Classification::NotExists, "N > D - 2M"};
  if (N == 2 * M) return {Classification::SteinerRequired, "N = 2M"};
  if (N == D - 2 * M) return {Classification::SteinerRequired, "N = D - 2M"};
  return {Classification::NeedsSearch, "2M < N < D - 2M"};
}

std::uint64_t b_min(int D, int N, int M) {
  const std::uint64_t n = binomial(D, M), k = binomial(N, M);
  return k == 0 ? 0 : (n + k - 1) / k;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::NotExists: return "NotExists";
    case VerdictKind::ExistsWithState: return "ExistsWithState";
    case VerdictKind::ExhaustedNoSolution: return "ExhaustedNoSolution";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

using Clock = std::chrono::steady_clock;
using Edges = std::vector<Bits>;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Bitset over the C(D,M) subsets, sized at run time.
struct Cover {
  std::vector<std::uint64_t> w;
  void merge(const Cover& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  bool operator==(const Cover&) const = default;
};

struct LevelResult {
  std::vector<Edges> next;
  std::vector<char> covers;  ///< per class: every M-subset already covered
  std::vector<char> pruned;
  bool any_children = false;
};

class Enumerator {
 public:
  Enumerator(int D, int N, int M, const EnumerationOptions& opt)
      : D_(D), N_(N), M_(M), opt_(opt), universe_(all_subsets(D, N)) {
    const std::size_t rows = binomial(D, M);
    words_ = (rows + 63) / 64;
    full_.w.assign(words_, 0);
    for (std::size_t r = 0; r < rows; ++r) full_.w[r / 64] |= std::uint64_t{1} << (r % 64);
    std::sort(universe_.begin(), universe_.end());
    const std::vector<Bits> picks = all_subsets(N, M);
    cover_of_.reserve(universe_.size());
    for (Bits e : universe_) {
      Cover c{std::vector<std::uint64_t>(words_, 0)};
      int pos[kMaxOrbitals];
      int k = 0;
      for (Bits b = e; b != 0; b &= b - 1) pos[k++] = std::countr_zero(b);
      for (Bits pick : picks) {
        Bits sub = 0;
        for (Bits p = pick; p != 0; p &= p - 1) sub |= Bits{1} << pos[std::countr_zero(p)];
        const std::uint64_t r = rank_bits(sub, D, M);
        c.w[r / 64] |= std::uint64_t{1} << (r % 64);
      }
      cover_of_.push_back(std::move(c));
    }
  }

  const Cover& cover_of(Bits e) const {
    return cover_of_[std::lower_bound(universe_.begin(), universe_.end(), e) - universe_.begin()];
  }

  /// Processes one class: coverage flags and canonical children.
  void process(const Edges& h, bool want_children, Edges* buffer, std::vector<Edges>& out,
               char& covers, char& pruned) const {
    const int limit = N_ - M_;
    std::vector<std::size_t> cand;
    for (std::size_t u = 0; u < universe_.size(); ++u) {
      const Bits e = universe_[u];
      bool ok = true;
      for (Bits f : h)
        if (std::popcount(e & f) >= limit) {
          ok = false;
          break;
        }
      if (ok) cand.push_back(u);
    }
    Cover have{std::vector<std::uint64_t>(words_, 0)};
    for (Bits f : h) have.merge(cover_of(f));
    covers = have == full_;
    pruned = 0;
    if (opt_.prune_uncoverable && !covers) {
      Cover reach = have;
      for (std::size_t u : cand) reach.merge(cover_of_[u]);
      if (!(reach == full_)) {
        pruned = 1;
        return;
      }
    }
    if (!want_children || cand.empty()) return;

    // one child per orbit of the known automorphisms on the candidates
    const CanonicalForm cf = canonical_labelling(Hypergraph(D_, N_, h), opt_.canonical);
    std::vector<int> parent(cand.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : cf.automorphisms) {
      for (std::size_t i = 0; i < cand.size(); ++i) {
        Bits img = 0;
        for (Bits b = universe_[cand[i]]; b != 0; b &= b - 1)
          img |= Bits{1} << g[std::countr_zero(b)];
        auto it = std::lower_bound(cand.begin(), cand.end(), img,
                                   [&](std::size_t u, Bits v) { return universe_[u] < v; });
        const int j = static_cast<int>(it - cand.begin());
        int a = find(static_cast<int>(i)), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    Edges& child = *buffer;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
      child = h;
      child.push_back(universe_[cand[i]]);
      const Hypergraph hg(D_, N_, child);
      const CanonicalForm c = canonical_labelling(hg, opt_.canonical);
      out.push_back(relabel_edges(child, c.labelling));
    }
  }

  LevelResult run_level(const std::vector<Edges>& level, bool want_children,
                        std::atomic<bool>& stop, Clock::time_point deadline) const {
    const bool timed = deadline != Clock::time_point::max();
    LevelResult res;
    res.covers.assign(level.size(), 0);
    res.pruned.assign(level.size(), 0);
    const int nt = opt_.threads > 0 ? opt_.threads : omp_get_max_threads();
    std::vector<std::vector<Edges>> per_thread(static_cast<std::size_t>(nt));
    std::exception_ptr error;
    std::mutex error_mu;
    const long long count = static_cast<long long>(level.size());
#pragma omp parallel num_threads(nt) if (nt > 1)
    {
      const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
      Edges buffer;
#pragma omp for schedule(dynamic, 16)
      for (long long i = 0; i < count; ++i) {
        if (stop.load(std::memory_order_relaxed)) continue;
        if (timed && Clock::now() > deadline) {
          stop.store(true, std::memory_order_relaxed);
          continue;
        }
        try {
          process(level[i], want_children, &buffer, per_thread[tid], res.covers[i],
                  res.pruned[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    }
    if (error) std::rethrow_exception(error);
    for (auto& v : per_thread) {
      res.any_children = res.any_children || !v.empty();
      for (auto& e : v) res.next.push_back(std::move(e));
    }
    std::sort(res.next.begin(), res.next.end());
    res.next.erase(std::unique(res.next.begin(), res.next.end()), res.next.end());
    return res;
  }

  /// Whether any class of `level` still admits an edge.
  bool any_extensible(const std::vector<Edges>& level) const {
    const int limit = N_ - M_;
    for (const Edges& h : level)
      for (Bits e : universe_) {
        bool ok = true;
        for (Bits f : h)
          if (std::popcount(e & f) >= limit) {
            ok = false;
            break;
          }
        if (ok) return true;
      }
    return false;
  }

  int D() const { return D_; }
  int N() const { return N_; }

 private:
  int D_, N_, M_;
  EnumerationOptions opt_;
  Edges universe_;
  std::size_t words_ = 0;
  Cover full_;
  std::vector<Cover> cover_of_;
};

/// Drives the levels; `on_level` sees each level with its coverage flags and
/// returns false to stop.
template <class OnLevel>
EnumerationStats drive(int D, int N, int M, const EnumerationOptions& opt, OnLevel&& on_level) {
  const auto t0 = Clock::now();
  EnumerationStats stats;
  const Enumerator en(D, N, M, opt);
  std::atomic<bool> stop{false};
  const auto deadline =
      opt.budget_seconds > 0
          ? t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opt.budget_seconds))
          : Clock::time_point::max();
  std::vector<Edges> level{Edges{}};  // the empty hypergraph
  stats.per_level.push_back(0);
  for (std::size_t b = 0;; ++b) {
    if (b > 0) {
      if (opt.budget_classes != 0 && stats.classes_visited + level.size() > opt.budget_classes) {
        stats.stop_reason = "class budget of " + std::to_string(opt.budget_classes) + " reached";
        return stats;
      }
      if (opt.budget_seconds > 0 && seconds_since(t0) > opt.budget_seconds) {
        stats.stop_reason = "time budget of " + std::to_string(opt.budget_seconds) + " s reached";
        return stats;
      }
    }
    const bool capped = opt.max_edges != 0 && b >= opt.max_edges;
    LevelResult res = en.run_level(level, !capped, stop, deadline);
    if (stop.load()) {
      stats.stop_reason = "time budget of " + std::to_string(opt.budget_seconds) + " s reached";
      return stats;
    }
    if (b > 0) {
      stats.classes_visited += level.size();
      stats.per_level.push_back(level.size());
      for (char p : res.pruned) stats.pruned += static_cast<std::uint64_t>(p);
      if (!on_level(b, level, res)) {
        stats.completed = true;
        stats.stop_reason = "stopped by caller";
        return stats;
      }
    }
    if (capped) {
      if (en.any_extensible(level)) {
        stats.stop_reason = "edge cap of " + std::to_string(opt.max_edges) + " reached";
        return stats;
      }
      stats.completed = true;
      return stats;
    }
    if (res.next.empty()) {
      stats.completed = true;
      return stats;
    }
    level = std::move(res.next);
  }
}

}  // namespace

EnumerationStats enumerate_admissible_classes(int D, int N, int M,
                                              const EnumerationOptions& options,
                                              const std::function<bool(const Hypergraph&)>& visit) {
  if (M < 1 || M >= N || N > D) throw std::invalid_argument("enumerate: need 1 <= M < N <= D");
  const std::uint64_t bmin = b_min(D, N, M);
  return drive(D, N, M, options,
               [&](std::size_t b, const std::vector<Edges>& level, const LevelResult& res) {
                 if (b < bmin) return true;
                 for (std::size_t i = 0; i < level.size(); ++i) {
                   if (res.pruned[i]) continue;
                   if (!visit(Hypergraph(D, N, level[i]))) return false;
                 }
                 return true;
               });
}

FermionState design_to_state(const Hypergraph& hg, int M) {
  if (hg.size() == 0) throw std::invalid_argument("design_to_state: empty hypergraph");
  if (M < 1 || M >= hg.N()) throw std::invalid_argument("design_to_state: need 1 <= M < N");
  if (!satisfies_overlap(hg, M))
    throw std::invalid_argument("design_to_state: overlap criterion violated");
  if (!is_t_design(hg, M)) throw std::invalid_argument("design_to_state: not an M-design");
  const double amp = 1.0 / std::sqrt(static_cast<double>(hg.size()));
  std::vector<FermionState::Term> terms;
  for (Bits e : hg.edges()) terms.push_back({SlaterDeterminant{OrbitalSubset(e, hg.D())}, Complex(amp)});
  return FermionState::normalized(hg.D(), hg.N(), std::move(terms));
}

FermionState solution_to_state(const Hypergraph& hg, const std::vector<mpq_class>& x) {
  if (x.size() != hg.size()) throw std::invalid_argument("solution_to_state: size mismatch");
  std::vector<FermionState::Term> terms;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (sgn(x[k]) > 0)
      terms.push_back({SlaterDeterminant{OrbitalSubset(hg.edges()[k], hg.D())},
                       Complex(std::sqrt(x[k].get_d()))});
  return FermionState::normalized(hg.D(), hg.N(), std::move(terms));
}

std::vector<NestingEntry> nesting_check(
    const FermionState& state, int M, double tol,
    const std::optional<std::pair<Hypergraph, std::vector<mpq_class>>>& exact) {
  std::vector<NestingEntry> out;
  for (int m = 1; m <= M; ++m) {
    NestingEntry e;
    e.M = m;
    const MaximalCheck c = verify_maximal(state, m, tol);
    e.maximal = c.maximal;
    e.deviation = c.max_deviation;
    if (exact && m <= exact->first.N())
      e.exact_identity = FeasibilityProblem::from_hypergraph(exact->first, m).satisfied_by(exact->second);
    out.push_back(e);
  }
  return out;
}

std::optional<Hypergraph> find_steiner_system(int v, int k, int t, std::uint64_t node_budget,
                                              std::string* reason) {
  if (t < 1 || k < t || v < k) throw std::invalid_argument("steiner: need 1 <= t <= k <= v");
  for (int i = 0; i < t; ++i)
    if (binomial(v - i, t - i) % binomial(k - i, t - i) != 0) {
      if (reason)
        *reason = "divisibility: C(" + std::to_string(v - i) + "," + std::to_string(t - i) +
                  ") is not a multiple of C(" + std::to_string(k - i) + "," +
                  std::to_string(t - i) + ")";
      return std::nullopt;
    }
  const std::size_t rows = binomial(v, t);
  const std::vector<Bits> blocks = all_subsets(v, k);
  const std::vector<Bits> picks = all_subsets(k, t);
  std::vector<std::vector<std::uint32_t>> sub_ranks(blocks.size());
  std::vector<std::vector<std::uint32_t>> containing(rows);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    int pos[kMaxOrbitals];
    int n = 0;
    for (Bits b = blocks[bi]; b != 0; b &= b - 1) pos[n++] = std::countr_zero(b);
    for (Bits pick : picks) {
      Bits sub = 0;
      for (Bits p = pick; p != 0; p &= p - 1) sub |= Bits{1} << pos[std::countr_zero(p)];
      const auto r = static_cast<std::uint32_t>(rank_bits(sub, v, t));
      sub_ranks[bi].push_back(r);
      containing[r].push_back(static_cast<std::uint32_t>(bi));
    }
  }
  std::vector<char> covered(rows, 0);
  std::vector<std::uint32_t> chosen;
  std::uint64_t nodes = 0;
  auto fits = [&](std::uint32_t bi) {
    for (auto r : sub_ranks[bi])
      if (covered[r]) return false;
    return true;
  };
  auto place = [&](std::uint32_t bi, char val) {
    for (auto r : sub_ranks[bi]) covered[r] = val;
  };
  std::function<bool(std::size_t)> solve = [&](std::size_t from) -> bool {
    if (++nodes > node_budget)
      throw ResourceExhausted("Steiner search exceeded " + std::to_string(node_budget) + " nodes");
    std::size_t r = from;
    while (r < rows && covered[r]) ++r;
    if (r == rows) return true;
    for (std::uint32_t bi : containing[r]) {
      if (!fits(bi)) continue;
      place(bi, 1);
      chosen.push_back(bi);
      if (solve(r + 1)) return true;
      chosen.pop_back();
      place(bi, 0);
    }
    return false;
  };
  // relabelling lets the first block be {1..k}
  place(0, 1);
  chosen.push_back(0);
  if (!solve(0)) {
    if (reason) *reason = "exact cover search exhausted";
    return std::nullopt;
  }
  std::vector<Bits> edges;
  for (auto bi : chosen) edges.push_back(blocks[bi]);
  std::sort(edges.begin(), edges.end());
  return Hypergraph(v, k, std::move(edges));
}

std::optional<Hypergraph> construct_design(int D, int N, int M) {
  auto accept = [&](std::vector<Bits> edges) -> std::optional<Hypergraph> {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Hypergraph hg(D, N, std::move(edges));
    if (satisfies_overlap(hg, M) && is_t_design(hg, M)) return hg;
    return std::nullopt;
  };
  if (N >= 1 && D % N == 0) {
    std::vector<Bits> blocks;
    for (int i = 0; i < D / N; ++i) blocks.push_back(low_mask(N) << (i * N));
    if (auto hg = accept(blocks)) return hg;
  }
  if (D > 24 || N < 1) return std::nullopt;
  const Bits all = low_mask(D);
  auto shift = [&](Bits b, int s) { return ((b << s) | (b >> (D - s))) & all; };
  for (Bits rest : all_subsets(D - 1, N - 1)) {
    const Bits base = (rest << 1) | 1;
    std::vector<Bits> orbit{base};
    for (int s = 1; s < D; ++s) orbit.push_back(shift(base, s));
    if (auto hg = accept(orbit)) return hg;
  }
  return std::nullopt;
}

namespace {

ExistenceVerdict finish_with_state(ExistenceVerdict v, FermionState state, Hypergraph hg,
                                   int M, double tol) {
  const MaximalCheck c = verify_maximal(state, M, tol);
  if (!c.maximal)
    throw NumericalFailure("constructed state misses rho proportional to identity by " +
                           std::to_string(c.max_deviation));
  v.kind = VerdictKind::ExistsWithState;
  v.deviation = c.max_deviation;
  v.state = std::move(state);
  v.hypergraph = std::move(hg);
  return v;
}

ExistenceVerdict search_direct(int D, int N, int M, const SearchOptions& opt,
                               Clock::time_point t0) {
  ExistenceVerdict v;
  v.options = opt;
  const ClassificationResult cls = classify_existence(D, N, M);
  v.reason = cls.reason;
  v.method = "classification";
  if (cls.kind == Classification::NotExists) {
    v.kind = VerdictKind::NotExists;
    return v;
  }
  if (cls.kind == Classification::SteinerRequired) {
    v.steiner_required = true;
    v.method = "steiner";
    const bool dual = N != 2 * M;
    std::string why;
    try {
      std::optional<Hypergraph> s = find_steiner_system(D, dual ? D - N : N, M,
                                                        opt.steiner_node_budget, &why);
      if (!s) {
        v.kind = VerdictKind::ExhaustedNoSolution;
        v.reason = cls.reason + "; no Steiner system: " + why;
        return v;
      }
      Hypergraph hg = dual ? complement(*s) : *s;
      v.edges_range = {hg.size(), hg.size()};
      v.solution = uniform_vector(hg.size());
      FermionState st = design_to_state(hg, M);
      return finish_with_state(std::move(v), std::move(st), std::move(hg), M, opt.verify_tol);
    } catch (const ResourceExhausted& e) {
      v.kind = VerdictKind::Unknown;
      v.reason = cls.reason + "; " + e.what();
      return v;
    }
  }
  if (opt.use_constructions) {
    if (std::optional<Hypergraph> hg = construct_design(D, N, M)) {
      v.method = "construction";
      v.edges_range = {hg->size(), hg->size()};
      v.solution = uniform_vector(hg->size());
      FermionState st = design_to_state(*hg, M);
      return finish_with_state(std::move(v), std::move(st), std::move(*hg), M, opt.verify_tol);
    }
  }

  v.method = "enumeration";
  EnumerationOptions eo = opt.enumeration;
  eo.prune_uncoverable = true;
  if (eo.budget_seconds > 0) eo.budget_seconds = std::max(1e-9, eo.budget_seconds - seconds_since(t0));
  const std::uint64_t bmin = b_min(D, N, M);
  std::optional<std::pair<Edges, FeasibilitySolution>> found;
  std::size_t first_level = 0, last_level = 0;
  const EnumerationStats stats = drive(
      D, N, M, eo, [&](std::size_t b, const std::vector<Edges>& level, const LevelResult& res) {
        if (first_level == 0) first_level = b;
        last_level = b;
        if (b < bmin) return true;
        std::vector<std::optional<FeasibilitySolution>> sols(level.size());
        const int nt = eo.threads > 0 ? eo.threads : omp_get_max_threads();
        const long long count = static_cast<long long>(level.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt) if (nt > 1)
        for (long long i = 0; i < count; ++i) {
          if (!res.covers[i] || res.pruned[i]) continue;
          sols[i] = lp_feasible(FeasibilityProblem::from_hypergraph(Hypergraph(D, N, level[i]), M));
        }
        for (std::size_t i = 0; i < level.size(); ++i)
          if (sols[i]) {
            found.emplace(level[i], std::move(*sols[i]));
            return false;
          }
        return true;
      });
  v.classes_visited = stats.classes_visited;
  v.edges_range = {first_level, last_level};
  if (found) {
    const Hypergraph full(D, N, found->first);
    const FeasibilityProblem p = FeasibilityProblem::from_hypergraph(full, M);
    const std::vector<mpq_class>& x = found->second.x;
    mpq_class total = 0;
    for (const auto& xi : x) total += xi;
    if (!p.satisfied_by(x) || total != 1)
      throw NumericalFailure("LP returned a point that fails the exact system");
    std::vector<Bits> support;
    std::vector<mpq_class> sx;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (sgn(x[k]) > 0) {
        support.push_back(full.edges()[k]);
        sx.push_back(x[k]);
      }
    Hypergraph hg(D, N, std::move(support));
    FermionState st = solution_to_state(hg, sx);
    v.solution = std::move(sx);
    v.reason = cls.reason + "; feasible class with " + std::to_string(full.size()) + " edges";
    return finish_with_state(std::move(v), std::move(st), std::move(hg), M, opt.verify_tol);
  }
  if (stats.completed) {
    v.kind = VerdictKind::ExhaustedNoSolution;
    v.reason = cls.reason + "; every admissible class is infeasible";
  } else {
    v.kind = VerdictKind::Unknown;
    v.reason = cls.reason + "; " + stats.stop_reason;
  }
  return v;
}

}  // namespace

ExistenceVerdict search_maximal_state(int D, int N, int M, const SearchOptions& options) {
  const auto t0 = Clock::now();
  ExistenceVerdict v;
  if (options.use_particle_hole && D - N < N && D - N >= 1) {
    v = search_direct(D, D - N, M, options, t0);
    v.options = options;
    v.reason += "; searched at N=" + std::to_string(D - N) + " and dualized";
    if (v.state) v.state = particle_hole_dual(*v.state);
    if (v.hypergraph) v.hypergraph = complement(*v.hypergraph);
    if (v.state) {
      const MaximalCheck c = verify_maximal(*v.state, M, options.verify_tol);
      if (!c.maximal) throw NumericalFailure("dual state is not maximal");
      v.deviation = c.max_deviation;
    }
  } else {
    v = search_direct(D, N, M, options, t0);
  }
  v.elapsed_seconds = seconds_since(t0);
  return v;
}

}  // namespace fermient
