// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

// fermient command-line driver.
//
// Exit codes: 0 success, 1 validation or parse error, 2 search budget
// exhausted (Unknown), 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "fermient/density.hpp"
#include "fermient/ensemble.hpp"
#include "fermient/errors.hpp"
#include "fermient/hypergraph.hpp"
#include "fermient/io.hpp"
#include "fermient/reference_states.hpp"
#include "fermient/search.hpp"
#include "fermient/version.hpp"

namespace {

using namespace fermient;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitNumerical = 3;

struct Global {
  int threads = 0;
  bool renormalize = false;
};

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot write " + out);
  f << j.dump(2) << '\n';
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int resolved_threads(const Global& g) {
  return g.threads > 0 ? g.threads : omp_get_max_threads();
}

Json spectrum_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

int cmd_analyze(const Global& g, const std::string& file, const std::vector<int>& ms,
                double tol, const std::string& out) {
  const FermionState state = parse_state(slurp(file), g.renormalize);
  const int threads = resolved_threads(g);
  Json report;
  report["version"] = kVersion;
  report["config"] = {{"file", file},   {"D", state.D()},     {"N", state.N()},
                      {"terms", state.size()}, {"tolerance", tol},
                      {"threads", threads},   {"renormalize", g.renormalize}};
  Json rows = Json::array();
  for (int M : ms) {
    if (M < 1 || M >= state.N())
      throw std::invalid_argument("M = " + std::to_string(M) + " outside 1..N-1");
    DensityMatrix dm = build_dm(state, M, threads);
    const auto& sp = cache_spectrum(dm);
    const double s = entropy_from_spectrum(sp);
    const double smax = max_entropy(state.D(), state.N(), M);
    const MaximalCheck mc = verify_maximal(state, M, tol);
    const SpectraMatch sm = spectra_match(state, M, tol);
    Json row;
    row["M"] = M;
    row["dim"] = dm.dim();
    row["spectrum"] = spectrum_json(sp);
    row["S"] = s;
    row["S_max"] = smax;
    row["S_n"] = smax > 0 ? s / smax : 0.0;
    row["maximal"] = mc.maximal;
    row["max_deviation"] = mc.max_deviation;
    row["spectra_match"] = {{"partner_M", state.N() - M},
                            {"match", sm.match},
                            {"max_deviation", sm.max_deviation}};
    rows.push_back(row);
  }
  report["results"] = rows;
  emit(report, out);
  return kExitOk;
}

int cmd_state(const FermionState& s, const std::string& out) {
  emit(state_to_json(s), out);
  return kExitOk;
}

int cmd_design(const std::string& file, int t, const std::string& out) {
  std::ifstream f(file);
  if (!f) throw std::invalid_argument("cannot open " + file);
  const Hypergraph hg = read_hypergraph(f);
  if (t < 1 || t > hg.N())
    throw std::invalid_argument("t = " + std::to_string(t) + " outside 1..N");
  const auto lambda = is_t_design(hg, t);
  Json j;
  j["version"] = kVersion;
  j["config"] = {{"file", file}, {"D", hg.D()}, {"N", hg.N()}, {"b", hg.size()}, {"t", t}};
  j["is_design"] = lambda.has_value();
  if (lambda)
    j["lambda"] = *lambda;
  else
    j["lambda"] = nullptr;
  j["is_steiner"] = is_steiner(hg, t);
  bool relation = false;
  if (lambda)
    relation = hg.size() * binomial(hg.N(), t) == *lambda * binomial(hg.D(), t);
  j["lambda_relation_ok"] = relation;
  emit(j, out);
  return kExitOk;
}

struct SearchArgs {
  int D = 0, N = 0, M = 0;
  std::size_t max_edges = 0;
  std::uint64_t budget_classes = 0;
  double budget_seconds = 600.0;
  bool no_constructions = false;
  bool particle_hole = false;
  std::string emit_state;
  std::string out;
};

int cmd_search(const Global& g, const SearchArgs& a) {
  SearchOptions opt;
  opt.enumeration.max_edges = a.max_edges;
  opt.enumeration.budget_classes = a.budget_classes;
  opt.enumeration.budget_seconds = a.budget_seconds;
  opt.enumeration.threads = resolved_threads(g);
  opt.use_constructions = !a.no_constructions;
  opt.use_particle_hole = a.particle_hole;
  const ExistenceVerdict v = search_maximal_state(a.D, a.N, a.M, opt);
  Json j = verdict_to_json(v);
  j["config"] = {{"D", a.D}, {"N", a.N}, {"M", a.M}};
  emit(j, a.out);
  if (!a.emit_state.empty() && v.state) emit(state_to_json(*v.state), a.emit_state);
  return v.kind == VerdictKind::Unknown ? kExitUnknown : kExitOk;
}

struct RandomArgs {
  int D = 0, N = 0, M = 0;
  int realizations = 1;
  std::optional<std::uint64_t> seed;
  std::string kind = "state";
  int bins = 60;
  std::string out;
  std::string hist;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("FERMI_ENT_SEED")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("FERMI_ENT_SEED is not an unsigned integer: " + std::string(env));
    }
  }
  return 0;
}

int cmd_random(const Global& g, const RandomArgs& a) {
  EnsembleConfig cfg;
  cfg.D = a.D;
  cfg.N = a.N;
  cfg.M = a.M;
  cfg.realizations = a.realizations;
  cfg.seed = resolve_seed(a.seed);
  cfg.bins = a.bins;
  cfg.kind = a.kind == "wl" ? EnsembleKind::TraceFixedWL : EnsembleKind::FermionicState;
  cfg.threads = resolved_threads(g);
  const EnsembleReport r = run_ensemble(cfg);
  emit(report_to_json(r), a.out);
  if (!a.hist.empty()) {
    std::ofstream f(a.hist);
    if (!f) throw std::invalid_argument("cannot write " + a.hist);
    write_histogram_csv(f, r.histogram);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of N-fermion states: reduced density matrices, maximal-state "
               "search and random-state spectra"};
  app.set_version_flag("--version", std::string(fermient::kVersion));
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "worker threads (default: available parallelism)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--renormalize", g.renormalize, "rescale input states to unit norm");

  std::string file, out;
  std::vector<int> ms;
  double tol = 1e-8;
  auto* analyze = app.add_subcommand("analyze", "entropies and spectra of a state file");
  analyze->add_option("state", file, "state file")->required();
  analyze->add_option("M", ms, "subsystem sizes")->required();
  analyze->add_option("--tol", tol, "tolerance for maximal and spectra checks");
  analyze->add_option("--out", out, "write the report here instead of stdout");

  int D = 0, r = 0, k = 0, t = 0;
  auto* ghz = app.add_subcommand("ghz", "generalized GHZ state");
  ghz->add_option("D", D)->required();
  ghz->add_option("r", r)->required();
  ghz->add_option("--out", out);

  auto* paired = app.add_subcommand("paired", "collective pair state");
  paired->add_option("D", D)->required();
  paired->add_option("k", k)->required();
  paired->add_option("--out", out);

  auto* design = app.add_subcommand("design", "t-design check of a hypergraph file");
  design->add_option("hypergraph", file)->required();
  design->add_option("t", t)->required();
  design->add_option("--out", out);

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "search for a state with rho^(M) ~ identity");
  search->add_option("D", sa.D)->required();
  search->add_option("N", sa.N)->required();
  search->add_option("M", sa.M)->required();
  search->add_option("--max-edges", sa.max_edges, "largest hypergraph enumerated (0: none)");
  search->add_option("--budget-classes", sa.budget_classes, "class budget (0: none)");
  search->add_option("--budget-seconds", sa.budget_seconds, "wall-clock budget (0: none)")
      ->capture_default_str();
  search->add_flag("--no-constructions", sa.no_constructions, "skip the construction pre-pass");
  search->add_flag("--particle-hole", sa.particle_hole, "search at min(N, D-N) and dualize");
  search->add_option("--emit-state", sa.emit_state, "write the found state here");
  search->add_option("--out", sa.out);

  RandomArgs ra;
  auto* random = app.add_subcommand("random", "random-state spectral ensemble");
  random->add_option("D", ra.D)->required();
  random->add_option("N", ra.N)->required();
  random->add_option("M", ra.M)->required();
  random->add_option("--realizations", ra.realizations)->required();
  random->add_option("--seed", ra.seed, "master seed (fallback: FERMI_ENT_SEED, then 0)");
  random->add_option("--kind", ra.kind)->check(CLI::IsMember({"state", "wl"}))->capture_default_str();
  random->add_option("--bins", ra.bins)->capture_default_str();
  random->add_option("--out", ra.out);
  random->add_option("--hist", ra.hist, "histogram CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*analyze) return cmd_analyze(g, file, ms, tol, out);
    if (*ghz) return cmd_state(fermient::build_ghz(D, r), out);
    if (*paired) return cmd_state(fermient::build_paired_state(D, k), out);
    if (*design) return cmd_design(file, t, out);
    if (*search) return cmd_search(g, sa);
    if (*random) return cmd_random(g, ra);
  } catch (const fermient::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
