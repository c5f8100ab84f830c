#include "xychain/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <mutex>

#include <lapacke.h>

extern "C" void openblas_set_num_threads(int);

namespace xychain::linalg {

namespace {

// Results must be bitwise reproducible between runs of the same build, so
// pin the BLAS to one thread before the first LAPACK call.
void ensure_single_threaded_blas() {
    static std::once_flag flag;
    std::call_once(flag, [] { openblas_set_num_threads(1); });
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix matrix_exp(const CMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("matrix_exp: input must be square, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    return a.exp();
}

int truncation_rank(const RVector& s, int chi_max, double eps) {
    const int n = static_cast<int>(s.size());
    if (n == 0) return 0;
    const double s0 = s(0);
    if (s0 <= 0.0) return 1;

    int significant = 0;
    for (int k = 0; k < n; ++k)
        if (s(k) / s0 > eps) significant = k + 1;

    int r = std::min(significant, chi_max);
    r = std::max(r, 1);

    // Do not split a multiplet degenerate to 1e-12 relative: grow the cut to
    // include it when it fits under chi_max, otherwise drop it whole.
    const double deg_tol = 1e-12;
    auto degenerate_at = [&](int cut) {
        return cut > 0 && cut < significant &&
               s(cut - 1) - s(cut) <= deg_tol * s(cut - 1);
    };
    while (degenerate_at(r) && r < chi_max) ++r;
    while (degenerate_at(r) && r > 1) --r;
    return r;
}

SVDResult svd_truncated(const CMatrix& m, int chi_max, double eps) {
    if (eps < 0.0) throw DimensionError("svd_truncated: eps must be >= 0");
    if (chi_max < 1) throw DimensionError("svd_truncated: chi_max must be >= 1");
    ensure_single_threaded_blas();

    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    const int k = std::min(rows, cols);

    SVDResult res;
    if (m.cwiseAbs().maxCoeff() == 0.0) {
        res.u = CMatrix::Zero(rows, 1);
        res.u(0, 0) = 1.0;
        res.singular_values = RVector::Zero(1);
        res.vh = CMatrix::Zero(1, cols);
        res.vh(0, 0) = 1.0;
        res.degenerate = true;
        return res;
    }

    CMatrix a = m;  // the LAPACK drivers destroy their input
    CMatrix u(rows, k);
    CMatrix vh(k, cols);
    RVector s(k);
    int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'S', rows, cols,
        reinterpret_cast<lapack_complex_double*>(a.data()), rows, s.data(),
        reinterpret_cast<lapack_complex_double*>(u.data()), rows,
        reinterpret_cast<lapack_complex_double*>(vh.data()), k);
    if (info != 0) {
        // The divide-and-conquer driver occasionally fails to converge on
        // spectra spanning many orders of magnitude; retry with the slower
        // QR-iteration driver.
        a = m;
        RVector superb(std::max(k - 1, 1));
        info = LAPACKE_zgesvd(
            LAPACK_COL_MAJOR, 'S', 'S', rows, cols,
            reinterpret_cast<lapack_complex_double*>(a.data()), rows, s.data(),
            reinterpret_cast<lapack_complex_double*>(u.data()), rows,
            reinterpret_cast<lapack_complex_double*>(vh.data()), k, superb.data());
        if (info != 0)
            throw Error("svd_truncated: LAPACK SVD failed with info=" + std::to_string(info));
    }

    const int r = truncation_rank(s, chi_max, eps);
    double discarded_sq = 0.0;
    for (int i = r; i < k; ++i) discarded_sq += s(i) * s(i);
    if (r < k) res.largest_discarded = s(r);

    res.u = u.leftCols(r);
    res.singular_values = s.head(r);
    res.vh = vh.topRows(r);
    res.truncation_error = std::sqrt(discarded_sq);
    return res;
}

namespace {

// Solves T_a Y + Y T_b = F column by column for upper-triangular T_a, T_b.
CMatrix solve_triangular_sylvester(const CMatrix& ta, const CMatrix& tb, const CMatrix& f) {
    const Eigen::Index n = ta.rows();
    const Eigen::Index p = tb.rows();
    CMatrix y = CMatrix::Zero(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        CVector rhs = f.col(j);
        for (Eigen::Index i = 0; i < j; ++i) rhs -= tb(i, j) * y.col(i);
        CMatrix lhs = ta;
        lhs.diagonal().array() += tb(j, j);
        y.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
    }
    return y;
}

}  // namespace

CMatrix solve_lyapunov(const CMatrix& x, const CMatrix& y) {
    if (x.rows() != x.cols())
        throw DimensionError("solve_lyapunov: x must be square");
    if (y.rows() != x.rows() || y.cols() != x.cols())
        throw DimensionError("solve_lyapunov: y must match x");

    Eigen::ComplexSchur<CMatrix> schur_a(x, true);
    if (schur_a.info() != Eigen::Success)
        throw Error("solve_lyapunov: Schur decomposition failed");
    const double max_re = schur_a.matrixT().diagonal().real().maxCoeff();
    if (max_re >= -1e-12)
        throw StabilityError("solve_lyapunov: drift is not strictly stable "
                             "(max Re eigenvalue = " + std::to_string(max_re) + ")");

    Eigen::ComplexSchur<CMatrix> schur_b(x.transpose().eval(), true);
    if (schur_b.info() != Eigen::Success)
        throw Error("solve_lyapunov: Schur decomposition failed");

    // x C + C x^T = -y  with  x = U Ta U*, x^T = V Tb V*:
    // Ta Y + Y Tb = -U* y V,  C = U Y V*.
    const CMatrix& u = schur_a.matrixU();
    const CMatrix& v = schur_b.matrixU();
    const CMatrix f = -(u.adjoint() * y * v);
    const CMatrix yy = solve_triangular_sylvester(schur_a.matrixT(), schur_b.matrixT(), f);
    return u * yy * v.adjoint();
}

}  // namespace xychain::linalg
