#pragma once

#include <vector>

#include "xychain/linalg.hpp"

namespace xychain::superop {

using linalg::CMatrix;

// Vectorization convention used everywhere in this project: an operator
// O = sum O_{jk} |j><k| is flattened row-major, vec(O)_{j*d+k} = O_{jk}.
// This matches the MPO composite physical index m = j*d + k, and gives
//   vec(A O B) = (A (x) B^T) vec(O).
linalg::CVector vec_row(const CMatrix& o);
CMatrix unvec_row(const linalg::CVector& v, int rows, int cols);

// Superoperator of O -> U O U^dagger.
CMatrix conjugation_superop(const CMatrix& u);

// Generator of the adjoint Hamiltonian flow, K vec(O) = vec(i [h, O]).
CMatrix adjoint_hamiltonian_generator(const CMatrix& h);

// Generator of the adjoint dissipator,
// K vec(O) = sum_g vec(L^+ O L - 1/2 {L^+ L, O}).
CMatrix adjoint_dissipator_generator(const std::vector<CMatrix>& lindblads);

// Reorders a two-site superoperator from the flattened-operator index
// (j1 j2), (k1 k2) to the MPO site-major composite index (j1 k1), (j2 k2),
// i.e. rows/cols become m1*d^2 + m2 with m = j*d + k. Physical dimension 2.
CMatrix two_site_gate_to_mpo_order(const CMatrix& g);

}  // namespace xychain::superop
