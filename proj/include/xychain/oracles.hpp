#pragma once

#include <utility>
#include <vector>

#include "xychain/linalg.hpp"
#include "xychain/model_xy.hpp"

namespace xychain::oracle {

using linalg::CMatrix;
using linalg::CVector;
using linalg::Complex;
using linalg::RMatrix;
using model::XYParameters;

// Quadratic-form data of the Jordan-Wigner image of the XY chain,
//   H = sum_ij a_ij c^+_i c_j + 1/2 sum_ij b_ij (c^+_i c^+_j - c_i c_j),
// a real symmetric, b real antisymmetric, plus the linear coefficient
// vectors (ell_j, l_j) of the four boundary Lindblad operators
// L = sum_j ell_j c^+_j + l_j c_j, stored as 2N-vectors (ell..., l...).
// sigma^+/- at site N carry a Jordan-Wigner string; on the Majorana
// two-point sector the string drops out exactly, so the vectors alone
// determine the covariance dynamics.
struct CouplingMatrices {
    RMatrix a;
    RMatrix b;
    std::vector<CVector> lindblad_vectors;
};

CouplingMatrices xy_to_couplings(const XYParameters& p);

// Dense vectorized generator of the adjoint master equation, N <= 5.
struct DenseAdjointLiouvillian {
    int n_sites = 0;
    CMatrix k;  // 4^N x 4^N, acting on row-major vec(O)
};

DenseAdjointLiouvillian build_dense_adjoint_liouvillian(const XYParameters& p);

// O(t) = unvec( exp(t K) vec(O(0)) ).
CMatrix dense_evolve(const CMatrix& o0, const DenseAdjointLiouvillian& l, double t);

// Majorana convention: w_{2j-1} = c_j + c^+_j, w_{2j} = -i(c_j - c^+_j),
// so <sz_j> = -i <w_{2j-1} w_{2j}>.
//
// Returns (X, Y) with d<w w^T>/dt = X C + C X^T + Y for C_{mn} = <w_m w_n>:
// X = h - 2 Re(M) and Y = 4 M^T, where h is the Hamiltonian rotation and
// M = sum_g g g^dagger the bath matrix of the Majorana Lindblad vectors.
std::pair<CMatrix, CMatrix> covariance_dynamics(const CouplingMatrices& cm);

// Real antisymmetric part K of C = 1 + i K obeys dK/dt = X K + K X^T + S
// with S = Im(Y). Propagates K exactly via a block (Van Loan) exponential.
RMatrix covariance_evolve(const RMatrix& x, const RMatrix& s, const RMatrix& k0, double t);

// Covariance matrix of a product state with given <sz_j> values.
RMatrix product_state_covariance(const std::vector<double>& sz);

// Per-site <sz_j> read off a Majorana covariance antisymmetric part.
std::vector<double> magnetization_profile(const RMatrix& k);

// Stationary <sz_j> profile from the Lyapunov equation X K + K X^T + S = 0.
// Throws StabilityError when the drift is not strictly stable (e.g. J = 0
// leaves the bulk undamped, or all rates vanish).
std::vector<double> stationary_profile(const XYParameters& p);

}  // namespace xychain::oracle
