#include "xychain/model_xy.hpp"

#include <cmath>

#include "xychain/errors.hpp"
#include "xychain/superop.hpp"
#include "xychain/triangular.hpp"

namespace xychain::model {

using namespace pauli;
using linalg::kron;
using linalg::matrix_exp;

void XYParameters::validate() const {
    if (n_sites < 2) throw ConfigError("XYParameters: n_sites must be >= 2");
    if (gamma_l_plus < 0 || gamma_l_minus < 0 || gamma_r_plus < 0 || gamma_r_minus < 0)
        throw ConfigError("XYParameters: boundary rates must be >= 0");
}

ParameterSchedule ParameterSchedule::constant(const XYParameters& p) {
    ParameterSchedule s;
    s.segments.push_back({0.0, p});
    return s;
}

void ParameterSchedule::validate() const {
    if (segments.empty()) throw ConfigError("ParameterSchedule: no segments");
    if (segments.front().t_start != 0.0)
        throw ConfigError("ParameterSchedule: first segment must start at t = 0");
    for (size_t i = 0; i + 1 < segments.size(); ++i)
        if (!(segments[i].t_start < segments[i + 1].t_start))
            throw ConfigError("ParameterSchedule: segment start times must increase");
    for (const auto& seg : segments) seg.params.validate();
}

const XYParameters& ParameterSchedule::params_at(double t) const {
    const XYParameters* p = &segments.front().params;
    for (const auto& seg : segments)
        if (seg.t_start <= t + 1e-12) p = &seg.params;
    return *p;
}

std::vector<double> ParameterSchedule::boundaries() const {
    std::vector<double> b;
    for (size_t i = 1; i < segments.size(); ++i) b.push_back(segments[i].t_start);
    return b;
}

CMatrix bond_hamiltonian(const XYParameters& p, int bond) {
    p.validate();
    if (bond < 1 || bond > p.n_sites - 1)
        throw DimensionError("bond_hamiltonian: bond out of range");
    const double wl = (bond == 1) ? 1.0 : 0.5;
    const double wr = (bond == p.n_sites - 1) ? 1.0 : 0.5;
    CMatrix h = p.coupling * ((1.0 + p.anisotropy) / 2.0 * kron(sx(), sx()) +
                              (1.0 - p.anisotropy) / 2.0 * kron(sy(), sy()));
    h += p.field * (wl * kron(sz(), id()) + wr * kron(id(), sz()));
    return h;
}

CMatrix adjoint_bond_gate(const XYParameters& p, int bond, double tau) {
    const CMatrix h = bond_hamiltonian(p, bond);
    const CMatrix u = matrix_exp(Complex(0, 1) * tau * h);
    return superop::two_site_gate_to_mpo_order(superop::conjugation_superop(u));
}

CMatrix boundary_dissipator_gate(const XYParameters& p, Side side, double tau) {
    p.validate();
    const double gp = (side == Side::left) ? p.gamma_l_plus : p.gamma_r_plus;
    const double gm = (side == Side::left) ? p.gamma_l_minus : p.gamma_r_minus;
    std::vector<CMatrix> ls;
    ls.push_back(std::sqrt(gp) * CMatrix(sp()));
    ls.push_back(std::sqrt(gm) * CMatrix(sm()));
    return matrix_exp(tau * superop::adjoint_dissipator_generator(ls));
}

CMatrix one_particle_generator(const XYParameters& p) {
    p.validate();
    const int n = p.n_sites;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) a(j, j) = -2.0 * p.field;
    for (int j = 0; j + 1 < n; ++j) {
        a(j, j + 1) = a(j + 1, j) = p.coupling;
        b(j, j + 1) = p.coupling * p.anisotropy;
        b(j + 1, j) = -p.coupling * p.anisotropy;
    }
    CMatrix g = CMatrix::Zero(2 * n, 2 * n);
    const Complex i1(0, 1);
    g.topLeftCorner(n, n) = -i1 * a;
    g.topRightCorner(n, n) = -i1 * b;
    g.bottomLeftCorner(n, n) = i1 * b;
    g.bottomRightCorner(n, n) = i1 * a;
    return g;
}

CoherentCoefficients closed_solution_coefficients(const XYParameters& p, double t,
                                                  int source_site, OperatorKind kind) {
    if (source_site < 1 || source_site > p.n_sites)
        throw DimensionError("closed_solution_coefficients: source site out of range");
    const int n = p.n_sites;
    const CMatrix e = matrix_exp(one_particle_generator(p) * t);
    const int row = (kind == OperatorKind::annihilation) ? source_site - 1 : n + source_site - 1;
    CoherentCoefficients c;
    c.alpha = e.row(row).head(n).transpose();
    c.beta = e.row(row).tail(n).transpose();
    c.source_site = source_site;
    c.time = t;
    return c;
}

Mpo c_operator_mpo(const CoherentCoefficients& coeffs, int n_sites) {
    if (coeffs.alpha.size() != n_sites || coeffs.beta.size() != n_sites)
        throw DimensionError("c_operator_mpo: coefficient length mismatch");
    std::vector<mpo::TriangularSiteMatrix> sites;
    sites.reserve(n_sites);
    for (int j = 0; j < n_sites; ++j) {
        auto site = mpo::TriangularSiteMatrix::make(2);
        site.block(0, 0) = id();
        site.block(1, 0) = coeffs.alpha(j) * sp() + coeffs.beta(j) * sm();
        site.block(1, 1) = sz();
        sites.push_back(std::move(site));
    }
    return Mpo::from_triangular(sites);
}

Mpo parity_mpo(int n_sites) {
    if (n_sites < 1) throw DimensionError("parity_mpo: n_sites must be >= 1");
    return Mpo::from_product(std::vector<LocalOperator>(n_sites, sz()));
}

CMatrix dense_site_operator(const LocalOperator& op, int site, int n_sites) {
    if (n_sites > mpo::Mpo::kDenseSiteLimit)
        throw SizeError("dense_site_operator: chain too long for dense form");
    if (site < 1 || site > n_sites)
        throw DimensionError("dense_site_operator: site out of range");
    CMatrix out = CMatrix::Identity(1, 1);
    for (int s = 1; s <= n_sites; ++s)
        out = kron(out, (s == site) ? CMatrix(op) : CMatrix(CMatrix::Identity(2, 2)));
    return out;
}

CMatrix dense_xy_hamiltonian(const XYParameters& p) {
    p.validate();
    if (p.n_sites > mpo::Mpo::kDenseSiteLimit)
        throw SizeError("dense_xy_hamiltonian: chain too long for dense form");
    const long dim = 1L << p.n_sites;
    CMatrix h = CMatrix::Zero(dim, dim);
    for (int j = 1; j < p.n_sites; ++j) {
        const CMatrix xx = dense_site_operator(sx(), j, p.n_sites) *
                           dense_site_operator(sx(), j + 1, p.n_sites);
        const CMatrix yy = dense_site_operator(sy(), j, p.n_sites) *
                           dense_site_operator(sy(), j + 1, p.n_sites);
        h += p.coupling * ((1.0 + p.anisotropy) / 2.0 * xx + (1.0 - p.anisotropy) / 2.0 * yy);
    }
    for (int j = 1; j <= p.n_sites; ++j)
        h += p.field * dense_site_operator(sz(), j, p.n_sites);
    return h;
}

std::vector<CMatrix> dense_lindblads(const XYParameters& p) {
    p.validate();
    std::vector<CMatrix> ls;
    ls.push_back(std::sqrt(p.gamma_l_plus) * dense_site_operator(sp(), 1, p.n_sites));
    ls.push_back(std::sqrt(p.gamma_l_minus) * dense_site_operator(sm(), 1, p.n_sites));
    ls.push_back(std::sqrt(p.gamma_r_plus) * dense_site_operator(sp(), p.n_sites, p.n_sites));
    ls.push_back(std::sqrt(p.gamma_r_minus) * dense_site_operator(sm(), p.n_sites, p.n_sites));
    return ls;
}

}  // namespace xychain::model
