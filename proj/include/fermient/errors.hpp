// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fermient {

/// Iterative routine failed to converge or produced values outside the
/// tolerance window (e.g. an eigenvalue below -1e-10 of a PSD matrix).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or canonicalization budget ran out before completion.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermient
