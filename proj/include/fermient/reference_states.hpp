// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fermient/fock.hpp"
#include "fermient/matrix.hpp"

namespace fermient {

/// r disjoint blocks of D/r consecutive orbitals, amplitude 1/sqrt(r) each.
FermionState build_ghz(int D, int r);

/// (A+)^k |0> normalized, A+ = sum_i c+_{2i-1} c+_{2i}. C(D/2,k) terms.
FermionState build_paired_state(int D, int k);

/// Single-particle change of basis c+_i -> sum_k u(i,k) c~+_k. Amplitudes
/// below `drop_below` are removed before renormalizing. Throws
/// std::invalid_argument when u is not D x D unitary within 1e-10.
FermionState rotate_basis(const FermionState& state, const CMatrix& u,
                          double drop_below = 1e-14);

/// Replaces each determinant by its orbital complement (N -> D-N).
FermionState particle_hole_dual(const FermionState& state);

/// Determinant of a small dense complex matrix by partial pivoting.
Complex determinant(CMatrix a);

}  // namespace fermient
