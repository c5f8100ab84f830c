#include "xychain/mpo.hpp"

#include <cmath>
#include <limits>

#include "xychain/errors.hpp"
#include "xychain/triangular.hpp"

namespace xychain::mpo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-site contraction vector for tr(rho O): the coefficient of |j><k| is
// weighted by <k|rho|j>.
CVector rho_contraction_vector(const LocalOperator& rho) {
    CVector v(4);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            v(j * 2 + k) = rho(k, j);
    return v;
}

void check_density_factor(const LocalOperator& rho, int site) {
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10)
        throw NormalizationError("density factor at site " + std::to_string(site) +
                                 " does not have unit trace");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw NormalizationError("density factor at site " + std::to_string(site) +
                                 " is not Hermitian");
}

}  // namespace

int effective_chi(const SchmidtSpectrum& s, double eps) {
    if (eps <= 0.0 || eps >= 1.0)
        throw DimensionError("effective_chi: eps must lie in (0,1)");
    int n = 0;
    for (Eigen::Index i = 0; i < s.values.size(); ++i)
        if (s.values(i) >= eps) ++n;
    return n;
}

Mpo Mpo::identity(int n_sites) {
    if (n_sites < 1) throw DimensionError("identity: n_sites must be >= 1");
    Mpo m;
    m.n_sites_ = n_sites;
    const double inv = 1.0 / std::sqrt(2.0);
    for (int s = 0; s < n_sites; ++s) {
        Tensor3 t(1, kCompositeDim, 1);
        t.at(0, 0, 0) = inv;  // |0><0|
        t.at(0, 3, 0) = inv;  // |1><1|
        m.site_.push_back(std::move(t));
    }
    m.lambda_.assign(n_sites - 1, RVector::Ones(1));
    m.log_prefactor_ = Complex(0.5 * n_sites * std::log(2.0), 0.0);
    m.canonical_ = true;
    return m;
}

Mpo Mpo::from_product(const std::vector<LocalOperator>& ops) {
    if (ops.empty()) throw DimensionError("from_product: empty operator list");
    Mpo m;
    m.n_sites_ = static_cast<int>(ops.size());
    Complex log_pref(0.0, 0.0);
    bool zero = false;
    for (const auto& op : ops) {
        const double f = op.norm();  // Frobenius
        Tensor3 t(1, kCompositeDim, 1);
        if (f == 0.0) {
            zero = true;
        } else {
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    t.at(0, j * 2 + k, 0) = op(j, k) / f;
            log_pref += std::log(Complex(f, 0.0));
        }
        m.site_.push_back(std::move(t));
    }
    m.lambda_.assign(m.n_sites_ - 1, RVector::Ones(1));
    if (zero) {
        m.mark_zero();
    } else {
        m.log_prefactor_ = log_pref;
        m.canonical_ = true;
    }
    return m;
}

Mpo Mpo::from_triangular(const std::vector<TriangularSiteMatrix>& sites) {
    if (sites.empty()) throw StructureError("from_triangular: empty site list");
    const int n = static_cast<int>(sites.size());
    for (int s = 0; s < n; ++s) {
        sites[s].validate();
        if (s + 1 < n && sites[s].chi != sites[s + 1].chi)
            throw StructureError("from_triangular: block dimension mismatch between sites " +
                                 std::to_string(s + 1) + " and " + std::to_string(s + 2));
    }

    std::vector<Tensor3> tensors;
    tensors.reserve(n);
    for (int s = 0; s < n; ++s) {
        const auto& sm = sites[s];
        const int chi_l = (s == 0) ? 1 : sm.chi;
        const int chi_r = (s == n - 1) ? 1 : sm.chi;
        Tensor3 t(chi_l, kCompositeDim, chi_r);
        for (int row = 0; row < sm.chi; ++row)
            for (int col = 0; col < sm.chi; ++col) {
                const LocalOperator& blk = sm.block(row, col);
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) {
                        const Complex val = blk(j, k);
                        if (val == Complex(0.0, 0.0)) continue;
                        if (n == 1) {
                            t.at(0, j * 2 + k, 0) +=
                                sites[0].left_boundary(row) * val * sites[0].right_boundary(col);
                        } else if (s == 0) {
                            t.at(0, j * 2 + k, col) += sm.left_boundary(row) * val;
                        } else if (s == n - 1) {
                            t.at(row, j * 2 + k, 0) += val * sm.right_boundary(col);
                        } else {
                            t.at(row, j * 2 + k, col) = val;
                        }
                    }
            }
        tensors.push_back(std::move(t));
    }
    return MpoBuilder::assemble(std::move(tensors), Complex(0.0, 0.0), true);
}

void Mpo::mark_zero() {
    zero_ = true;
    canonical_ = false;
    log_prefactor_ = Complex(-kInf, 0.0);
    for (auto& t : site_) std::fill(t.data.begin(), t.data.end(), Complex(0.0, 0.0));
}

int Mpo::bond_dim(int bond) const {
    if (bond < 1 || bond > n_sites_ - 1)
        throw DimensionError("bond_dim: bond out of range");
    return site_[bond - 1].chi_r;
}

int Mpo::max_bond_dim() const {
    int m = 1;
    for (const auto& t : site_) m = std::max(m, t.chi_r);
    return m;
}

const Tensor3& Mpo::site_tensor(int site) const {
    if (site < 1 || site > n_sites_)
        throw DimensionError("site_tensor: site out of range");
    return site_[site - 1];
}

const RVector& Mpo::lambda(int bond) const {
    if (bond < 1 || bond > n_sites_ - 1)
        throw DimensionError("lambda: bond out of range");
    return lambda_[bond - 1];
}

CMatrix Mpo::to_dense() const {
    if (n_sites_ > kDenseSiteLimit)
        throw SizeError("to_dense: refusing n_sites > " + std::to_string(kDenseSiteLimit));
    const long dim = 1L << n_sites_;
    if (zero_) return CMatrix::Zero(dim, dim);

    // Coefficient tensor over m-strings, most significant digit first.
    CMatrix coeff = CMatrix::Ones(1, 1);
    for (const auto& t : site_) {
        CMatrix next = CMatrix::Zero(coeff.rows() * kCompositeDim, t.chi_r);
        for (Eigen::Index q = 0; q < coeff.rows(); ++q)
            for (int m = 0; m < kCompositeDim; ++m)
                for (int r = 0; r < t.chi_r; ++r) {
                    Complex acc(0.0, 0.0);
                    for (int c = 0; c < t.chi_l; ++c) acc += coeff(q, c) * t.at(c, m, r);
                    next(q * kCompositeDim + m, r) = acc;
                }
        coeff = std::move(next);
    }

    const Complex pref = std::exp(log_prefactor_);
    CMatrix dense = CMatrix::Zero(dim, dim);
    for (long q = 0; q < coeff.rows(); ++q) {
        long jrow = 0, kcol = 0;
        for (int s = 0; s < n_sites_; ++s) {
            const int m = static_cast<int>((q >> (2 * (n_sites_ - 1 - s))) & 3);
            jrow = (jrow << 1) | (m >> 1);
            kcol = (kcol << 1) | (m & 1);
        }
        dense(jrow, kcol) = pref * coeff(q, 0);
    }
    return dense;
}

Complex Mpo::expectation(const std::vector<LocalOperator>& rho) const {
    if (static_cast<int>(rho.size()) != n_sites_)
        throw DimensionError("expectation: state has wrong number of sites");
    for (int s = 0; s < n_sites_; ++s) check_density_factor(rho[s], s + 1);
    if (zero_) return Complex(0.0, 0.0);

    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Ones(1);
    for (int s = 0; s < n_sites_; ++s) {
        const Tensor3& t = site_[s];
        const CVector v = rho_contraction_vector(rho[s]);
        CMatrix m = CMatrix::Zero(t.chi_l, t.chi_r);
        for (int l = 0; l < t.chi_l; ++l)
            for (int r = 0; r < t.chi_r; ++r) {
                Complex acc(0.0, 0.0);
                for (int p = 0; p < kCompositeDim; ++p) acc += t.at(l, p, r) * v(p);
                m(l, r) = acc;
            }
        row = row * m;
    }
    return row(0) * std::exp(log_prefactor_);
}

void Mpo::canonicalize() {
    if (zero_) throw DegenerateInputError("canonicalize: zero-norm MPO");

    // Left-to-right QR sweep into left-orthonormal form; the accumulated
    // scalar is the Frobenius norm and global phase.
    CMatrix carry = CMatrix::Identity(1, 1);
    for (int s = 0; s < n_sites_; ++s) {
        const CMatrix m = carry * site_[s].as_l_mr();
        const Tensor3 t = Tensor3::from_l_mr(m, kCompositeDim);
        const CMatrix a = t.as_lm_r();
        const Eigen::Index k = std::min(a.rows(), a.cols());
        Eigen::HouseholderQR<CMatrix> qr(a);
        const CMatrix q = qr.householderQ() * CMatrix::Identity(a.rows(), k);
        const CMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        site_[s] = Tensor3::from_lm_r(q, t.chi_l, kCompositeDim);
        carry = r;
    }
    const Complex scale = carry(0, 0);
    if (!(std::abs(scale) > 0.0) || !std::isfinite(std::abs(scale))) {
        mark_zero();
        if (std::isfinite(std::abs(scale)))
            throw DegenerateInputError("canonicalize: zero-norm MPO");
        throw NumericalAbort("canonicalize: non-finite norm");
    }
    log_prefactor_ += std::log(scale);

    // Right-to-left SVD sweep: extracts Schmidt vectors and leaves every
    // site in right-canonical B form.
    lambda_.assign(std::max(n_sites_ - 1, 0), RVector());
    CMatrix carry_r = CMatrix::Identity(1, 1);
    for (int s = n_sites_ - 1; s >= 1; --s) {
        const CMatrix m = site_[s].as_lm_r() * carry_r;
        const Tensor3 t = Tensor3::from_lm_r(m, site_[s].chi_l, kCompositeDim);
        auto svd = linalg::svd_truncated(t.as_l_mr(), std::numeric_limits<int>::max(), 0.0);
        if (svd.degenerate) {
            mark_zero();
            throw DegenerateInputError("canonicalize: zero-norm MPO");
        }
        const double nrm = svd.singular_values.norm();
        lambda_[s - 1] = svd.singular_values / nrm;
        log_prefactor_ += std::log(nrm);
        site_[s] = Tensor3::from_l_mr(svd.vh, kCompositeDim);
        carry_r = svd.u * (svd.singular_values / nrm).asDiagonal();
    }
    const CMatrix m0 = site_[0].as_lm_r() * carry_r;
    const double n0 = m0.norm();
    if (n0 == 0.0) {
        mark_zero();
        throw DegenerateInputError("canonicalize: zero-norm MPO");
    }
    site_[0] = Tensor3::from_lm_r(m0 / n0, 1, kCompositeDim);
    log_prefactor_ += std::log(n0);
    canonical_ = true;
}

SchmidtSpectrum Mpo::schmidt_spectrum(int bond) const {
    if (bond < 1 || bond > n_sites_ - 1)
        throw DimensionError("schmidt_spectrum: bond out of range");
    if (!canonical_)
        throw StateError("schmidt_spectrum: MPO is not in canonical form; canonicalize() first");
    return SchmidtSpectrum{bond, lambda_[bond - 1]};
}

TruncationStats Mpo::apply_two_site_gate(const CMatrix& gate, int bond, int chi_max,
                                         double eps) {
    if (bond < 1 || bond > n_sites_ - 1)
        throw DimensionError("apply_two_site_gate: bond out of range");
    if (gate.rows() != 16 || gate.cols() != 16)
        throw DimensionError("apply_two_site_gate: gate must be 16x16");
    TruncationStats stats;
    if (zero_) return stats;

    const int s = bond - 1;
    const Tensor3& t1 = site_[s];
    const Tensor3& t2 = site_[s + 1];
    const int chi_l = t1.chi_l;
    const int chi_r = t2.chi_r;

    // theta_hat: two-site block without the left Schmidt weights.
    CMatrix theta_hat = t1.as_lm_r() * t2.as_l_mr();  // (chi_l*4, 4*chi_r)

    // Apply the gate on the composite pair (m1, m2).
    CMatrix p(16, static_cast<Eigen::Index>(chi_l) * chi_r);
    for (int m1 = 0; m1 < 4; ++m1)
        for (int m2 = 0; m2 < 4; ++m2)
            for (int l = 0; l < chi_l; ++l)
                for (int r = 0; r < chi_r; ++r)
                    p(m1 * 4 + m2, l + static_cast<Eigen::Index>(chi_l) * r) =
                        theta_hat(l + static_cast<Eigen::Index>(chi_l) * m1, m2 + 4 * r);
    p = gate * p;
    for (int m1 = 0; m1 < 4; ++m1)
        for (int m2 = 0; m2 < 4; ++m2)
            for (int l = 0; l < chi_l; ++l)
                for (int r = 0; r < chi_r; ++r)
                    theta_hat(l + static_cast<Eigen::Index>(chi_l) * m1, m2 + 4 * r) =
                        p(m1 * 4 + m2, l + static_cast<Eigen::Index>(chi_l) * r);

    // Weight rows by the left Schmidt vector to make the SVD spectrum the
    // true Schmidt spectrum of the bond.
    CMatrix theta = theta_hat;
    if (s > 0) {
        const RVector& ll = lambda_[s - 1];
        for (int m1 = 0; m1 < 4; ++m1)
            for (int l = 0; l < chi_l; ++l)
                theta.row(l + static_cast<Eigen::Index>(chi_l) * m1) *= ll(l);
    }

    auto svd = linalg::svd_truncated(theta, chi_max, eps);
    if (svd.degenerate) {
        mark_zero();
        return stats;
    }
    const double kept = svd.singular_values.norm();
    const double total = std::sqrt(kept * kept + svd.truncation_error * svd.truncation_error);
    stats.relative_error = svd.truncation_error / total;
    stats.discarded_max = svd.largest_discarded / svd.singular_values(0);
    stats.retained = static_cast<int>(svd.singular_values.size());

    lambda_[s] = svd.singular_values / kept;
    log_prefactor_ += std::log(kept);
    site_[s + 1] = Tensor3::from_l_mr(svd.vh, kCompositeDim);
    const CMatrix b1 = (theta_hat * svd.vh.adjoint()) / kept;
    site_[s] = Tensor3::from_lm_r(b1, chi_l, kCompositeDim);
    return stats;
}

void Mpo::refresh_bond(int bond0, double floor_eps) {
    const int cap = site_[bond0].chi_r;
    // A one-site map cannot raise the Schmidt rank of an adjacent bond, so
    // capping at the current dimension is exact.
    const CMatrix id = CMatrix::Identity(16, 16);
    // Reuse the two-site path with an identity gate but a rank cap.
    apply_two_site_gate(id, bond0 + 1, cap, floor_eps);
}

void Mpo::apply_one_site_gate(const CMatrix& gate, int site) {
    if (site < 1 || site > n_sites_)
        throw DimensionError("apply_one_site_gate: site out of range");
    if (gate.rows() != 4 || gate.cols() != 4)
        throw DimensionError("apply_one_site_gate: gate must be 4x4");
    if (zero_) return;

    const int s = site - 1;
    Tensor3& t = site_[s];
    Tensor3 out(t.chi_l, kCompositeDim, t.chi_r);
    for (int l = 0; l < t.chi_l; ++l)
        for (int r = 0; r < t.chi_r; ++r)
            for (int m = 0; m < kCompositeDim; ++m) {
                Complex acc(0.0, 0.0);
                for (int mp = 0; mp < kCompositeDim; ++mp) acc += gate(m, mp) * t.at(l, mp, r);
                out.at(l, m, r) = acc;
            }
    site_[s] = std::move(out);
    canonical_ = false;

    if (n_sites_ == 1) {
        const double n0 = std::sqrt(site_[0].squared_norm());
        if (n0 == 0.0) {
            mark_zero();
            return;
        }
        for (auto& z : site_[0].data) z /= n0;
        log_prefactor_ += std::log(n0);
        canonical_ = true;
        return;
    }
    constexpr double kFloor = 1e-15;
    if (s == 0) {
        refresh_bond(0, kFloor);
    } else if (s == n_sites_ - 1) {
        refresh_bond(n_sites_ - 2, kFloor);
    } else {
        refresh_bond(s - 1, kFloor);
        refresh_bond(s, kFloor);
    }
}

Mpo Mpo::partial_trace_last_site(const LocalOperator& rho_a) const {
    if (n_sites_ < 2)
        throw DimensionError("partial_trace_last_site: needs at least two sites");
    check_density_factor(rho_a, n_sites_);

    if (zero_) {
        Mpo out;
        out.n_sites_ = n_sites_ - 1;
        out.site_.assign(out.n_sites_, Tensor3(1, kCompositeDim, 1));
        out.lambda_.assign(out.n_sites_ - 1, RVector::Ones(1));
        out.mark_zero();
        return out;
    }

    std::vector<Tensor3> tensors(site_.begin(), site_.end() - 1);

    const Tensor3& last = site_.back();
    const CVector v = rho_contraction_vector(rho_a);
    CVector t_vec = CVector::Zero(last.chi_l);
    for (int c = 0; c < last.chi_l; ++c)
        for (int m = 0; m < kCompositeDim; ++m) t_vec(c) += last.at(c, m, 0) * v(m);

    const CMatrix folded = tensors.back().as_lm_r() * t_vec;
    tensors.back() = Tensor3::from_lm_r(folded, tensors.back().chi_l, kCompositeDim);

    try {
        return MpoBuilder::assemble(std::move(tensors), log_prefactor_, true);
    } catch (const DegenerateInputError&) {
        Mpo out;
        out.n_sites_ = n_sites_ - 1;
        out.site_.assign(out.n_sites_, Tensor3(1, kCompositeDim, 1));
        out.lambda_.assign(out.n_sites_ - 1, RVector::Ones(1));
        out.mark_zero();
        return out;
    }
}

Mpo MpoBuilder::assemble(std::vector<Tensor3> tensors, Complex log_prefactor,
                         bool canonicalize_now) {
    if (tensors.empty()) throw DimensionError("MpoBuilder: no site tensors");
    if (tensors.front().chi_l != 1 || tensors.back().chi_r != 1)
        throw DimensionError("MpoBuilder: boundary bonds must have dimension 1");
    for (size_t s = 0; s + 1 < tensors.size(); ++s)
        if (tensors[s].chi_r != tensors[s + 1].chi_l)
            throw DimensionError("MpoBuilder: bond dimension mismatch at bond " +
                                 std::to_string(s + 1));
    Mpo m;
    m.n_sites_ = static_cast<int>(tensors.size());
    m.site_ = std::move(tensors);
    m.log_prefactor_ = log_prefactor;
    m.lambda_.assign(m.n_sites_ - 1, RVector());
    for (int b = 0; b + 1 < m.n_sites_; ++b) {
        const int chi = m.site_[b].chi_r;
        m.lambda_[b] = RVector::Constant(chi, 1.0 / std::sqrt(static_cast<double>(chi)));
    }
    m.canonical_ = false;
    if (canonicalize_now) m.canonicalize();
    return m;
}

Mpo MpoBuilder::assemble_canonical(std::vector<Tensor3> tensors, std::vector<RVector> lambdas,
                                   Complex log_prefactor, bool zero, bool canonical) {
    Mpo m = assemble(std::move(tensors), log_prefactor, false);
    if (static_cast<int>(lambdas.size()) != m.n_sites_ - 1)
        throw DimensionError("MpoBuilder: lambda count mismatch");
    m.lambda_ = std::move(lambdas);
    m.canonical_ = canonical;
    if (zero) m.mark_zero();
    return m;
}

}  // namespace xychain::mpo
