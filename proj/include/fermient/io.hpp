// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief State files, JSON reports and histogram CSV.
 *
 * State file: {"D": int, "N": int, "terms": [{"orbitals": [1-based,
 * ascending], "re": real, "im": real}, ...]}.
 */

#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "fermient/ensemble.hpp"
#include "fermient/fock.hpp"
#include "fermient/search.hpp"

namespace fermient {

using Json = nlohmann::ordered_json;

/// Throws std::invalid_argument with the offending line or field. Norms off
/// by more than 1e-9 are rejected unless `renormalize` is set.
FermionState parse_state(const std::string& text, bool renormalize = false);
FermionState read_state(std::istream& in, bool renormalize = false);

Json state_to_json(const FermionState& state);
Json hypergraph_to_json(const Hypergraph& hg);
Json verdict_to_json(const ExistenceVerdict& v);
Json report_to_json(const EnsembleReport& r);

/// Header bin_left,bin_right,empirical_density,analytic_semicircle,analytic_mp.
void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace fermient
