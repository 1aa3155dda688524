// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fermient/version.hpp"

namespace fermient {
namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument("state file field '" + field + "': " + what);
}

int as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<int>();
}

double as_real(const Json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  return j.get<double>();
}

std::vector<int> orbitals_of(Bits b) {
  std::vector<int> out;
  for (; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

}  // namespace

FermionState parse_state(const std::string& text, bool renormalize) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw std::invalid_argument("state file line " + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) field_error("<root>", "expected an object");
  for (const char* k : {"D", "N", "terms"})
    if (!j.contains(k)) field_error(k, "missing");
  const int D = as_int(j["D"], "D");
  const int N = as_int(j["N"], "N");
  if (D < 1 || D > kMaxOrbitals) field_error("D", "outside [1, 64]");
  if (N < 0 || N > D) field_error("N", "outside [0, D]");
  if (!j["terms"].is_array()) field_error("terms", "expected an array");
  std::vector<FermionState::Term> terms;
  double norm = 0.0;
  for (std::size_t i = 0; i < j["terms"].size(); ++i) {
    const Json& t = j["terms"][i];
    const std::string at = "terms[" + std::to_string(i) + "]";
    if (!t.is_object()) field_error(at, "expected an object");
    for (const char* k : {"orbitals", "re", "im"})
      if (!t.contains(k)) field_error(at + "." + k, "missing");
    if (!t["orbitals"].is_array()) field_error(at + ".orbitals", "expected an array");
    std::vector<int> orb;
    for (std::size_t q = 0; q < t["orbitals"].size(); ++q)
      orb.push_back(as_int(t["orbitals"][q], at + ".orbitals[" + std::to_string(q) + "]"));
    if (static_cast<int>(orb.size()) != N)
      field_error(at + ".orbitals", "expected " + std::to_string(N) + " orbitals");
    for (std::size_t q = 0; q < orb.size(); ++q) {
      if (orb[q] < 1 || orb[q] > D) field_error(at + ".orbitals", "orbital outside 1..D");
      if (q > 0 && orb[q] <= orb[q - 1]) field_error(at + ".orbitals", "not strictly ascending");
    }
    const Complex a(as_real(t["re"], at + ".re"), as_real(t["im"], at + ".im"));
    norm += std::norm(a);
    terms.push_back({SlaterDeterminant{OrbitalSubset::from_orbitals(orb, D)}, a});
  }
  const double dev = std::abs(norm - 1.0);
  if (dev > 1e-9 && !renormalize)
    throw std::invalid_argument("state file: sum of |amplitude|^2 is " + std::to_string(norm) +
                                ", expected 1 (use --renormalize)");
  if (dev <= 1e-12) return FermionState(D, N, std::move(terms), 1e-12);
  return FermionState::normalized(D, N, std::move(terms));
}

FermionState read_state(std::istream& in, bool renormalize) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_state(text, renormalize);
}

Json state_to_json(const FermionState& state) {
  Json terms = Json::array();
  for (const auto& t : state.terms())
    terms.push_back({{"orbitals", t.det.occupied.orbitals()},
                     {"re", t.amplitude.real()},
                     {"im", t.amplitude.imag()}});
  return {{"D", state.D()}, {"N", state.N()}, {"terms", terms}};
}

Json hypergraph_to_json(const Hypergraph& hg) {
  Json edges = Json::array();
  for (Bits e : hg.edges()) edges.push_back(orbitals_of(e));
  return {{"D", hg.D()}, {"N", hg.N()}, {"edges", edges}};
}

Json verdict_to_json(const ExistenceVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["reason"] = v.reason;
  j["method"] = v.method;
  j["steiner_required"] = v.steiner_required;
  j["classes_visited"] = v.classes_visited;
  j["edges_range"] = {v.edges_range.first, v.edges_range.second};
  j["deviation"] = v.deviation;
  if (v.state) j["state"] = state_to_json(*v.state);
  if (v.hypergraph) j["hypergraph"] = hypergraph_to_json(*v.hypergraph);
  if (v.solution) {
    Json xs = Json::array();
    for (const auto& x : *v.solution) xs.push_back(x.get_str());
    j["solution"] = xs;
  }
  const auto& e = v.options.enumeration;
  j["budget"] = {{"max_edges", e.max_edges},
                 {"classes", e.budget_classes},
                 {"seconds", e.budget_seconds},
                 {"threads", e.threads},
                 {"constructions", v.options.use_constructions},
                 {"particle_hole", v.options.use_particle_hole}};
  j["elapsed_seconds"] = v.elapsed_seconds;
  j["version"] = kVersion;
  return j;
}

Json report_to_json(const EnsembleReport& r) {
  const auto& c = r.config;
  Json j;
  j["version"] = kVersion;
  j["config"] = {{"D", c.D},         {"N", c.N},
                 {"M", c.M},         {"realizations", c.realizations},
                 {"seed", c.seed},   {"bins", c.bins},
                 {"kind", to_string(c.kind)}, {"threads", c.threads}};
  j["mu"] = r.curve.mu;
  j["sigma"] = r.curve.sigma;
  j["c"] = r.curve.c;
  j["xi_minus"] = r.curve.xi_minus;
  j["xi_plus"] = r.curve.xi_plus;
  j["eigenvalue_count"] = r.eigenvalue_count;
  j["empirical_mean"] = r.empirical_mean;
  j["empirical_std"] = r.empirical_std;
  j["mean_entropy"] = r.mean_entropy;
  j["S_max"] = r.S_max;
  if (std::isnan(r.predicted_mean_entropy))
    j["predicted_mean_entropy"] = nullptr;
  else
    j["predicted_mean_entropy"] = r.predicted_mean_entropy;
  j["ks_semicircle"] = r.ks_semicircle;
  j["ks_mp"] = r.ks_mp;
  j["ks_model"] = r.ks_model;
  j["max_trace_error"] = r.max_trace_error;
  return j;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(std::numeric_limits<double>::max_digits10);
  s << "bin_left,bin_right,empirical_density,analytic_semicircle,analytic_mp\n";
  for (std::size_t b = 0; b < h.empirical_density.size(); ++b)
    s << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.empirical_density[b] << ','
      << h.analytic_semicircle[b] << ',' << h.analytic_mp[b] << '\n';
  out << s.str();
}

}  // namespace fermient
