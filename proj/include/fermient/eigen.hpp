// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fermient/matrix.hpp"

namespace fermient {

struct JacobiOptions {
  double tolerance = 1e-12;  ///< relative off-diagonal Frobenius target
  int max_sweeps = 100;
  double hermitian_tol = 1e-12;
};

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted descending. Throws std::invalid_argument if the input is not
/// square or not Hermitian within options.hermitian_tol (scaled by the
/// largest entry when that exceeds one), and NumericalFailure if the sweeps
/// do not converge.
std::vector<double> hermitian_eigenvalues(const CMatrix& a,
                                          const JacobiOptions& options = {});

}  // namespace fermient
