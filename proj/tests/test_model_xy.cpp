#include "xychain/model_xy.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_helpers.hpp"
#include "xychain/superop.hpp"

using namespace xychain;
using namespace xychain::pauli;
using linalg::CMatrix;
using linalg::Complex;
using model::OperatorKind;
using model::Side;
using model::XYParameters;
using testutil::max_abs_diff;
using testutil::site_op;

namespace {

// Independent dense H_xy, assembled term by term from explicit site ops.
CMatrix dense_h_ref(const XYParameters& p) {
    const int n = p.n_sites;
    CMatrix h = CMatrix::Zero(1L << n, 1L << n);
    for (int j = 1; j < n; ++j)
        h += p.coupling *
             ((1.0 + p.anisotropy) / 2.0 * site_op(sx(), j, n) * site_op(sx(), j + 1, n) +
              (1.0 - p.anisotropy) / 2.0 * site_op(sy(), j, n) * site_op(sy(), j + 1, n));
    for (int j = 1; j <= n; ++j) h += p.field * site_op(sz(), j, n);
    return h;
}

// Embeds a 4x4 bond operator at (bond, bond+1) of an N-site chain.
CMatrix embed_bond(const CMatrix& h4, int bond, int n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int s = 1; s <= n; ++s) {
        if (s == bond) {
            out = testutil::kron_ref(out, h4);
            ++s;  // consumed two sites
        } else {
            out = testutil::kron_ref(out, CMatrix::Identity(2, 2));
        }
    }
    return out;
}

// Two-site operator O -> vec in MPO site-major order m1*4+m2, m=(j,k).
Eigen::VectorXcd vec_mpo_order(const CMatrix& o) {
    Eigen::VectorXcd v(16);
    for (int j1 = 0; j1 < 2; ++j1)
        for (int k1 = 0; k1 < 2; ++k1)
            for (int j2 = 0; j2 < 2; ++j2)
                for (int k2 = 0; k2 < 2; ++k2)
                    v((j1 * 2 + k1) * 4 + (j2 * 2 + k2)) = o(j1 * 2 + j2, k1 * 2 + k2);
    return v;
}

XYParameters closed_params(int n, double j, double g, double b) {
    XYParameters p;
    p.n_sites = n;
    p.coupling = j;
    p.anisotropy = g;
    p.field = b;
    return p;
}

}  // namespace

TEST(BondHamiltonian, IsingLimit) {
    XYParameters p = closed_params(3, 1.3, 1.0, 0.0);
    const CMatrix h = model::bond_hamiltonian(p, 1);
    EXPECT_LT(max_abs_diff(h, 1.3 * testutil::kron_ref(sx(), sx())), 1e-14);
}

TEST(BondHamiltonian, TwoSiteChainCarriesFullField) {
    XYParameters p = closed_params(2, 0.7, 0.3, 0.9);
    const CMatrix h = model::bond_hamiltonian(p, 1);
    EXPECT_LT(max_abs_diff(h, dense_h_ref(p)), 1e-13);
}

TEST(BondHamiltonian, BondTermsSumToFullHamiltonian) {
    std::mt19937 rng(101);
    const XYParameters p = testutil::random_params(5, rng, false);
    CMatrix total = CMatrix::Zero(32, 32);
    for (int b = 1; b <= 4; ++b) total += embed_bond(model::bond_hamiltonian(p, b), b, 5);
    EXPECT_LT(max_abs_diff(total, dense_h_ref(p)), 1e-12);
    EXPECT_LT(max_abs_diff(total, model::dense_xy_hamiltonian(p)), 1e-12);
}

TEST(BondHamiltonian, RejectsBadBond) {
    XYParameters p = closed_params(3, 1, 0, 0);
    EXPECT_THROW(model::bond_hamiltonian(p, 0), DimensionError);
    EXPECT_THROW(model::bond_hamiltonian(p, 3), DimensionError);
}

TEST(AdjointBondGate, ZeroTimeIsIdentity) {
    XYParameters p = closed_params(3, 1.1, 0.4, 0.2);
    EXPECT_LT(max_abs_diff(model::adjoint_bond_gate(p, 1, 0.0), CMatrix::Identity(16, 16)),
              1e-13);
}

TEST(AdjointBondGate, IdentityOperatorIsFixed) {
    XYParameters p = closed_params(3, 0.9, 0.7, -0.4);
    const CMatrix gate = model::adjoint_bond_gate(p, 2, 0.37);
    const Eigen::VectorXcd v = vec_mpo_order(CMatrix::Identity(4, 4));
    EXPECT_LT((gate * v - v).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AdjointBondGate, MatchesDenseConjugation) {
    std::mt19937 rng(103);
    const XYParameters p = testutil::random_params(4, rng, false);
    const double tau = 0.23;
    for (int bond = 1; bond <= 3; ++bond) {
        const CMatrix h = model::bond_hamiltonian(p, bond);
        const CMatrix u = linalg::matrix_exp(Complex(0, 1) * tau * h);
        const CMatrix gate = model::adjoint_bond_gate(p, bond, tau);
        for (int trial = 0; trial < 20; ++trial) {
            const CMatrix o = testutil::random_cmatrix(4, 4, rng);
            const CMatrix expected = u * o * u.adjoint();
            const Eigen::VectorXcd got = gate * vec_mpo_order(o);
            EXPECT_LT((got - vec_mpo_order(expected)).cwiseAbs().maxCoeff(), 1e-11);
        }
    }
}

TEST(AdjointBondGate, PreservesFrobeniusNorm) {
    std::mt19937 rng(107);
    const XYParameters p = testutil::random_params(3, rng, false);
    const CMatrix gate = model::adjoint_bond_gate(p, 1, 0.81);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXcd v = testutil::random_cmatrix(16, 1, rng);
        EXPECT_NEAR((gate * v).norm(), v.norm(), 1e-11 * v.norm());
    }
}

TEST(DissipatorGate, ZeroRatesGiveIdentity) {
    XYParameters p = closed_params(2, 1, 0.5, 0.3);
    EXPECT_LT(max_abs_diff(model::boundary_dissipator_gate(p, Side::left, 0.4),
                           CMatrix::Identity(4, 4)),
              1e-13);
}

TEST(DissipatorGate, UnitalFixedPoint) {
    XYParameters p = closed_params(2, 1, 0.5, 0.3);
    p.gamma_l_plus = 0.7;
    p.gamma_l_minus = 0.2;
    const CMatrix gate = model::boundary_dissipator_gate(p, Side::left, 0.9);
    Eigen::VectorXcd v(4);
    v << 1, 0, 0, 1;  // vec(identity)
    EXPECT_LT((gate * v - v).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DissipatorGate, PureLossRelaxesSzTowardMinusOne) {
    // With only sigma^- loss at rate G, the adjoint map sends
    // sz -> e^{-Gt} sz - (1 - e^{-Gt}) 1.
    XYParameters p = closed_params(2, 1, 0, 0);
    p.gamma_l_minus = 0.8;
    const double tau = 0.6;
    const CMatrix gate = model::boundary_dissipator_gate(p, Side::left, tau);
    Eigen::VectorXcd vz(4), vid(4);
    vz << 1, 0, 0, -1;
    vid << 1, 0, 0, 1;
    const double decay = std::exp(-0.8 * tau);
    const Eigen::VectorXcd expected = decay * vz - (1.0 - decay) * vid;
    EXPECT_LT((gate * vz - expected).cwiseAbs().maxCoeff(), 1e-12);

    // Cross-check against the dense single-site exponential.
    std::vector<CMatrix> ls{std::sqrt(0.8) * CMatrix(sm())};
    const CMatrix k = superop::adjoint_dissipator_generator(ls);
    EXPECT_LT(max_abs_diff(gate, linalg::matrix_exp(tau * k)), 1e-12);
}

TEST(DissipatorGate, ContractsTracelessPart) {
    std::mt19937 rng(109);
    XYParameters p = closed_params(2, 1, 0, 0);
    p.gamma_r_plus = 0.4;
    p.gamma_r_minus = 0.9;
    const CMatrix gate = model::boundary_dissipator_gate(p, Side::right, 0.31);
    for (int trial = 0; trial < 100; ++trial) {
        CMatrix o = testutil::random_cmatrix(2, 2, rng);
        o -= 0.5 * o.trace() * CMatrix::Identity(2, 2);
        Eigen::VectorXcd v(4);
        v << o(0, 0), o(0, 1), o(1, 0), o(1, 1);
        EXPECT_LE((gate * v).norm(), v.norm() * (1.0 + 1e-12));
    }
}

TEST(DissipatorGate, RejectsNegativeRates) {
    XYParameters p = closed_params(2, 1, 0, 0);
    p.gamma_l_plus = -0.1;
    EXPECT_THROW(model::boundary_dissipator_gate(p, Side::left, 0.1), ConfigError);
}

TEST(ClosedSolution, InitialCondition) {
    const XYParameters p = closed_params(4, 1.0, 0.6, 0.3);
    const auto c = model::closed_solution_coefficients(p, 0.0, 2, OperatorKind::annihilation);
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(std::abs(c.alpha(j) - Complex(j == 1 ? 1.0 : 0.0, 0.0)), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(c.beta(j)), 0.0, 1e-13);
    }
}

TEST(ClosedSolution, DecoupledSitePurePhase) {
    const XYParameters p = closed_params(3, 0.0, 0.0, 0.7);
    const double t = 1.3;
    const auto c = model::closed_solution_coefficients(p, t, 2, OperatorKind::annihilation);
    EXPECT_LT(std::abs(c.alpha(1) - std::exp(Complex(0, 2.0 * 0.7 * t))), 1e-12);
    EXPECT_LT(c.beta.cwiseAbs().maxCoeff(), 1e-13);
    const auto cd = model::closed_solution_coefficients(p, t, 2, OperatorKind::creation);
    EXPECT_LT(std::abs(cd.beta(1) - std::exp(Complex(0, -2.0 * 0.7 * t))), 1e-12);
}

TEST(ClosedSolution, NormConservation) {
    std::mt19937 rng(113);
    const XYParameters p = testutil::random_params(6, rng, false);
    const auto c = model::closed_solution_coefficients(p, 2.7, 3, OperatorKind::creation);
    EXPECT_NEAR(c.alpha.squaredNorm() + c.beta.squaredNorm(), 1.0, 1e-10);
}

TEST(ClosedSolution, MpoMatchesDenseHeisenbergEvolution) {
    std::mt19937 rng(127);
    for (int trial = 0; trial < 3; ++trial) {
        const XYParameters p = testutil::random_params(4, rng, false);
        const double t = 0.9;
        const int ell = 1 + static_cast<int>(rng() % 4);
        const auto kind = (trial % 2 == 0) ? OperatorKind::annihilation : OperatorKind::creation;

        const auto c = model::closed_solution_coefficients(p, t, ell, kind);
        const CMatrix got = model::c_operator_mpo(c, 4).to_dense();

        const CMatrix h = dense_h_ref(p);
        const CMatrix u = linalg::matrix_exp(Complex(0, 1) * t * h);
        CMatrix c0 = testutil::jw_annihilation(ell, 4);
        if (kind == OperatorKind::creation) c0 = c0.adjoint().eval();
        const CMatrix expected = u * c0 * u.adjoint();
        EXPECT_LT(max_abs_diff(got, expected), 1e-8) << "trial " << trial;
    }
}

TEST(COperatorMpo, LocalAtFirstSite) {
    model::CoherentCoefficients c;
    c.alpha = Eigen::VectorXcd::Zero(3);
    c.beta = Eigen::VectorXcd::Zero(3);
    c.alpha(0) = 1.0;
    const CMatrix dense = model::c_operator_mpo(c, 3).to_dense();
    EXPECT_LT(max_abs_diff(dense, site_op(sp(), 1, 3)), 1e-12);
}

TEST(COperatorMpo, OneJordanWignerFactor) {
    model::CoherentCoefficients c;
    c.alpha = Eigen::VectorXcd::Zero(3);
    c.beta = Eigen::VectorXcd::Zero(3);
    c.beta(1) = 1.0;
    const CMatrix dense = model::c_operator_mpo(c, 3).to_dense();
    EXPECT_LT(max_abs_diff(dense, site_op(sz(), 1, 3) * site_op(sm(), 2, 3)), 1e-12);
}

TEST(COperatorMpo, GenericCoefficientsMatchDenseSum) {
    std::mt19937 rng(131);
    const int n = 4;
    model::CoherentCoefficients c;
    c.alpha = testutil::random_cmatrix(n, 1, rng);
    c.beta = testutil::random_cmatrix(n, 1, rng);
    const CMatrix dense = model::c_operator_mpo(c, n).to_dense();
    CMatrix expected = CMatrix::Zero(1L << n, 1L << n);
    for (int j = 1; j <= n; ++j) {
        CMatrix x = c.alpha(j - 1) * site_op(sp(), j, n) + c.beta(j - 1) * site_op(sm(), j, n);
        for (int k = 1; k < j; ++k) x = site_op(sz(), k, n) * x;
        expected += x;
    }
    EXPECT_LT(max_abs_diff(dense, expected), 1e-12);
}

TEST(ParityMpo, SmallChains) {
    EXPECT_LT(max_abs_diff(model::parity_mpo(1).to_dense(), sz()), 1e-14);
    EXPECT_LT(max_abs_diff(model::parity_mpo(2).to_dense(), testutil::kron_ref(sz(), sz())),
              1e-14);
    const CMatrix p4 = model::parity_mpo(4).to_dense();
    EXPECT_LT(max_abs_diff(p4 * p4, CMatrix::Identity(16, 16)), 1e-12);
}

TEST(ParityConservation, EvenOperatorStaysEvenUnderBondGates) {
    std::mt19937 rng(137);
    XYParameters p = testutil::random_params(4, rng, true);
    const CMatrix parity = model::parity_mpo(4).to_dense();
    CMatrix o = site_op(sz(), 2, 4);
    for (int b = 1; b <= 3; ++b) {
        const CMatrix u = linalg::matrix_exp(
            Complex(0, 1) * 0.17 * embed_bond(model::bond_hamiltonian(p, b), b, 4));
        o = u * o * u.adjoint();
        EXPECT_LT(max_abs_diff(parity * o * parity, o), 1e-9);
    }
}
