#pragma once

#include <Eigen/Dense>
#include <complex>

#include "xychain/errors.hpp"

namespace xychain::linalg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

struct SVDResult {
    CMatrix u;                  // isometry, m x r
    RVector singular_values;    // length r, non-increasing, >= 0
    CMatrix vh;                 // isometry (conjugate-transposed factor), r x n
    double truncation_error = 0.0;  // sqrt(sum of squares of discarded values)
    double largest_discarded = 0.0;
    bool degenerate = false;        // input had zero norm
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

// exp(a) by scaling-and-squaring Pade, relative accuracy ~1e-12.
CMatrix matrix_exp(const CMatrix& a);

// Number of values retained by the relative threshold s_k/s_0 > eps, capped
// at chi_max, never splitting a degenerate multiplet (1e-12 relative): the
// multiplet is kept whole if it fits under chi_max and dropped whole
// otherwise. At least one value is always retained.
int truncation_rank(const RVector& s, int chi_max, double eps);

// Full SVD followed by truncation as in truncation_rank. An all-zero input
// yields a rank-1 result with singular value 0 and degenerate = true.
SVDResult svd_truncated(const CMatrix& m, int chi_max, double eps);

// Solves x C + C x^T + y = 0 (note: transpose, not adjoint). Requires every
// eigenvalue of x to have real part < -1e-12, else throws StabilityError.
// Residual is bounded by ~1e-9 * ||y||_F for well-conditioned inputs.
CMatrix solve_lyapunov(const CMatrix& x, const CMatrix& y);

inline bool is_hermitian(const CMatrix& m, double tol = 1e-12) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace xychain::linalg
