#pragma once

// Shared test-side oracles. These deliberately avoid the library's own
// contraction and superoperator code paths: dense operators are assembled
// with explicit loops so that agreement with the library is meaningful.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "xychain/model_xy.hpp"
#include "xychain/pauli.hpp"

namespace testutil {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Explicit-loop Kronecker product, independent of linalg::kron.
inline CMatrix kron_ref(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j)
            out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    return out;
}

// Operator `op` on `site` (1-based) of an N-site chain.
inline CMatrix site_op(const CMatrix& op, int site, int n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int s = 1; s <= n; ++s)
        out = kron_ref(out, s == site ? op : CMatrix(CMatrix::Identity(2, 2)));
    return out;
}

// Jordan-Wigner fermion operator: c_j = (prod_{k<j} sz_k) s+_j.
inline CMatrix jw_annihilation(int site, int n) {
    CMatrix out = site_op(xychain::pauli::sp(), site, n);
    for (int k = 1; k < site; ++k) out = site_op(xychain::pauli::sz(), k, n) * out;
    return out;
}

// Majorana operators w_{2j-1} = c_j + c^+_j, w_{2j} = -i(c_j - c^+_j).
inline CMatrix jw_majorana(int m, int n) {  // m is 1-based, 1..2N
    const int site = (m + 1) / 2;
    const CMatrix c = jw_annihilation(site, n);
    if (m % 2 == 1) return c + c.adjoint();
    return Complex(0, -1) * (c - CMatrix(c.adjoint()));
}

inline CMatrix random_cmatrix(int rows, int cols, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(d(rng), d(rng));
    return m;
}

// Random single-site density matrix (Hermitian, unit trace, PSD).
inline CMatrix random_density2(std::mt19937& rng) {
    CMatrix a = random_cmatrix(2, 2, rng);
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

inline std::vector<xychain::pauli::LocalOperator> random_product_state(int n, std::mt19937& rng) {
    std::vector<xychain::pauli::LocalOperator> state;
    for (int s = 0; s < n; ++s) state.push_back(random_density2(rng));
    return state;
}

// Random XY parameter draw in units of J = 1.
inline xychain::model::XYParameters random_params(int n, std::mt19937& rng, bool driven) {
    std::uniform_real_distribution<double> d(0.0, 1.0);
    xychain::model::XYParameters p;
    p.n_sites = n;
    p.coupling = 1.0;
    p.anisotropy = d(rng);
    p.field = 2.0 * d(rng) - 1.0;
    if (driven) {
        p.gamma_l_plus = 0.1 + 0.9 * d(rng);
        p.gamma_l_minus = 0.1 + 0.9 * d(rng);
        p.gamma_r_plus = 0.1 + 0.9 * d(rng);
        p.gamma_r_minus = 0.1 + 0.9 * d(rng);
    }
    return p;
}

// Schrodinger-picture Lindblad generator in column-stacking convention;
// an independent route to expectation dynamics:
//   d<O>/dt = tr(L_sch{rho} O) must equal tr(rho L_adj{O}).
inline CMatrix schrodinger_liouvillian(const CMatrix& h, const std::vector<CMatrix>& ls) {
    const Eigen::Index d = h.rows();
    const CMatrix id = CMatrix::Identity(d, d);
    CMatrix k = Complex(0, -1) * (kron_ref(id, h) - kron_ref(h.transpose(), id));
    for (const auto& l : ls) {
        const CMatrix ll = l.adjoint() * l;
        k += kron_ref(l.conjugate(), l);
        k -= 0.5 * kron_ref(id, ll);
        k -= 0.5 * kron_ref(ll.transpose(), id);
    }
    return k;
}

// Column-stacking vec, used with schrodinger_liouvillian only.
inline CVector vec_col(const CMatrix& m) {
    CVector v(m.size());
    Eigen::Index i = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) v(i++) = m(r, c);
    return v;
}

// Classic RK4 for dX/dt = f(X).
template <typename F>
CMatrix rk4(CMatrix x, double t_final, int steps, F&& f) {
    const double h = t_final / steps;
    for (int i = 0; i < steps; ++i) {
        const CMatrix k1 = f(x);
        const CMatrix k2 = f(x + 0.5 * h * k1);
        const CMatrix k3 = f(x + 0.5 * h * k2);
        const CMatrix k4 = f(x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

// Truncated Taylor series with argument scaling; accurate to ~1e-13 for
// moderate norms, independent of the Pade implementation under test.
inline CMatrix taylor_exp(const CMatrix& a, int order = 60) {
    int squarings = 0;
    CMatrix b = a;
    while (b.cwiseAbs().rowwise().sum().maxCoeff() > 0.5) {
        b /= 2.0;
        ++squarings;
    }
    CMatrix term = CMatrix::Identity(a.rows(), a.cols());
    CMatrix sum = term;
    for (int k = 1; k <= order; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
