#include "xychain/oracles.hpp"

#include <cmath>

#include "xychain/errors.hpp"
#include "xychain/superop.hpp"

namespace xychain::oracle {

using linalg::kron;
using linalg::matrix_exp;

CouplingMatrices xy_to_couplings(const XYParameters& p) {
    p.validate();
    const int n = p.n_sites;
    CouplingMatrices cm;
    cm.a = RMatrix::Zero(n, n);
    cm.b = RMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) cm.a(j, j) = -2.0 * p.field;
    for (int j = 0; j + 1 < n; ++j) {
        cm.a(j, j + 1) = cm.a(j + 1, j) = p.coupling;
        cm.b(j, j + 1) = p.coupling * p.anisotropy;
        cm.b(j + 1, j) = -p.coupling * p.anisotropy;
    }
    // Under c_j = (prod_{k<j} sz_k) s+_j: s+_1 = c_1, s-_1 = c^+_1, and the
    // site-N operators are c_N / c^+_N times the string.
    auto vec = [n](int site, bool dagger, double rate) {
        CVector v = CVector::Zero(2 * n);
        if (rate > 0.0) v((dagger ? 0 : n) + site) = std::sqrt(rate);
        return v;
    };
    cm.lindblad_vectors.push_back(vec(0, false, p.gamma_l_plus));       // L1
    cm.lindblad_vectors.push_back(vec(0, true, p.gamma_l_minus));       // L2
    cm.lindblad_vectors.push_back(vec(n - 1, false, p.gamma_r_plus));   // L3
    cm.lindblad_vectors.push_back(vec(n - 1, true, p.gamma_r_minus));   // L4
    return cm;
}

DenseAdjointLiouvillian build_dense_adjoint_liouvillian(const XYParameters& p) {
    if (p.n_sites > 5)
        throw SizeError("build_dense_adjoint_liouvillian: n_sites must be <= 5");
    const CMatrix h = model::dense_xy_hamiltonian(p);
    const auto ls = model::dense_lindblads(p);
    DenseAdjointLiouvillian out;
    out.n_sites = p.n_sites;
    out.k = superop::adjoint_hamiltonian_generator(h) +
            superop::adjoint_dissipator_generator(ls);
    return out;
}

CMatrix dense_evolve(const CMatrix& o0, const DenseAdjointLiouvillian& l, double t) {
    const long dim = 1L << l.n_sites;
    if (o0.rows() != dim || o0.cols() != dim)
        throw DimensionError("dense_evolve: operator dimension mismatch");
    const CVector v = matrix_exp(t * l.k) * superop::vec_row(o0);
    return superop::unvec_row(v, dim, dim);
}

namespace {

// w = Omega (c..., c^+...) with the interleaved Majorana ordering.
CMatrix majorana_transform(int n) {
    CMatrix om = CMatrix::Zero(2 * n, 2 * n);
    const Complex i1(0, 1);
    for (int j = 0; j < n; ++j) {
        om(2 * j, j) = 1.0;
        om(2 * j, n + j) = 1.0;
        om(2 * j + 1, j) = -i1;
        om(2 * j + 1, n + j) = i1;
    }
    return om;
}

// Majorana vector of a linear fermion operator (ell..., l...).
CVector majorana_vector(const CVector& v, int n) {
    CVector g = CVector::Zero(2 * n);
    const Complex i1(0, 1);
    for (int j = 0; j < n; ++j) {
        const Complex ell = v(j), l = v(n + j);
        g(2 * j) = 0.5 * (ell + l);
        g(2 * j + 1) = 0.5 * i1 * (l - ell);
    }
    return g;
}

}  // namespace

std::pair<CMatrix, CMatrix> covariance_dynamics(const CouplingMatrices& cm) {
    const int n = static_cast<int>(cm.a.rows());
    const Complex i1(0, 1);
    CMatrix g = CMatrix::Zero(2 * n, 2 * n);
    g.topLeftCorner(n, n) = -i1 * cm.a;
    g.topRightCorner(n, n) = -i1 * cm.b;
    g.bottomLeftCorner(n, n) = i1 * cm.b;
    g.bottomRightCorner(n, n) = i1 * cm.a;

    const CMatrix om = majorana_transform(n);
    const CMatrix h_c = om * g * om.adjoint() / 2.0;  // Omega^{-1} = Omega^dagger / 2
    if (h_c.imag().cwiseAbs().maxCoeff() > 1e-10)
        throw Error("covariance_dynamics: Hamiltonian rotation is not real");

    CMatrix m = CMatrix::Zero(2 * n, 2 * n);
    for (const auto& v : cm.lindblad_vectors) {
        if (v.size() != 2 * n)
            throw DimensionError("covariance_dynamics: Lindblad vector length mismatch");
        const CVector gvec = majorana_vector(v, n);
        m += gvec * gvec.adjoint();
    }

    const CMatrix x = h_c.real().cast<Complex>() - 2.0 * m.real().cast<Complex>();
    const CMatrix y = 4.0 * m.transpose();
    return {x, y};
}

namespace {

// Van Loan block exponential for one substep of the affine flow
// dK/dt = X K + K X^T + S:  exp(dt [[X, S], [0, -X^T]]) = [[F, G], [0, *]]
// gives the exact map K -> F K F^T + G F^T.
std::pair<RMatrix, RMatrix> affine_step_maps(const RMatrix& x, const RMatrix& s, double dt) {
    const Eigen::Index n = x.rows();
    CMatrix blk = CMatrix::Zero(2 * n, 2 * n);
    blk.topLeftCorner(n, n) = x.cast<Complex>();
    blk.topRightCorner(n, n) = s.cast<Complex>();
    blk.bottomRightCorner(n, n) = -x.transpose().cast<Complex>();
    const CMatrix e = matrix_exp(dt * blk);
    return {e.topLeftCorner(n, n).real(), e.topRightCorner(n, n).real()};
}

}  // namespace

RMatrix covariance_evolve(const RMatrix& x, const RMatrix& s, const RMatrix& k0, double t) {
    const Eigen::Index n = x.rows();
    if (s.rows() != n || k0.rows() != n)
        throw DimensionError("covariance_evolve: dimension mismatch");
    if (t == 0.0) return k0;
    // The -X^T block of the Van Loan matrix grows like exp(+rate*t), so a
    // single exponential overflows for long times; propagate the exact
    // substep map instead with the step bounded by the drift norm.
    const double norm_bound = x.cwiseAbs().rowwise().sum().maxCoeff();
    const double max_step = 4.0 / std::max(norm_bound, 0.25);
    const long n_steps = std::max(1L, static_cast<long>(std::ceil(t / max_step - 1e-12)));
    const double dt = t / static_cast<double>(n_steps);
    const auto [f, g] = affine_step_maps(x, s, dt);
    const RMatrix gf = g * f.transpose();
    RMatrix k = k0;
    for (long i = 0; i < n_steps; ++i) k = f * k * f.transpose() + gf;
    return k;
}

RMatrix product_state_covariance(const std::vector<double>& sz) {
    const int n = static_cast<int>(sz.size());
    RMatrix k = RMatrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        k(2 * j, 2 * j + 1) = sz[j];
        k(2 * j + 1, 2 * j) = -sz[j];
    }
    return k;
}

std::vector<double> magnetization_profile(const RMatrix& k) {
    const int n = static_cast<int>(k.rows()) / 2;
    std::vector<double> sz(n);
    for (int j = 0; j < n; ++j) sz[j] = k(2 * j, 2 * j + 1);
    return sz;
}

std::vector<double> stationary_profile(const XYParameters& p) {
    const auto cm = xy_to_couplings(p);
    auto [x, y] = covariance_dynamics(cm);
    const CMatrix s = Complex(0, -0.5) * (y - y.transpose());  // Im of antisym part
    const CMatrix k = linalg::solve_lyapunov(x, s);
    return magnetization_profile(k.real());
}

}  // namespace xychain::oracle
