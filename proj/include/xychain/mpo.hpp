#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "xychain/linalg.hpp"
#include "xychain/pauli.hpp"
#include "xychain/tensor3.hpp"

namespace xychain::mpo {

using pauli::LocalOperator;
using linalg::CVector;
using linalg::RVector;

// Schmidt coefficients for the bipartition between sites `bond` and bond+1
// (1-based). For a canonical Frobenius-normalized MPO, sum lambda^2 = 1.
struct SchmidtSpectrum {
    int bond = 0;
    RVector values;
};

// Number of Schmidt coefficients >= eps.
int effective_chi(const SchmidtSpectrum& s, double eps);

struct TruncationStats {
    double relative_error = 0.0;  // sqrt(discarded weight / total weight)
    double discarded_max = 0.0;   // largest discarded singular value (relative)
    int retained = 0;
};

struct TriangularSiteMatrix;

// Matrix product operator over N spin-1/2 sites in canonical form. The
// composite physical index m = j*d + k encodes the coefficient of |j><k|.
//
// Internally each site holds B[s] = Gamma[s] * Lambda[s] (right bond
// Schmidt weights absorbed), so the coefficient tensor is the plain product
// B[1] B[2] ... B[N] and no inverse Schmidt weights ever appear in
// contractions or gate updates. Interior bond Schmidt vectors are stored
// separately, normalized to sum lambda^2 = 1, and the Frobenius norm of the
// encoded operator lives in exp(log_prefactor).
class Mpo {
public:
    static constexpr int kPhysDim = 2;
    static constexpr int kCompositeDim = kPhysDim * kPhysDim;
    static constexpr int kDenseSiteLimit = 12;

    // chi = 1 MPO of the identity operator, log_prefactor = (N/2) ln 2.
    static Mpo identity(int n_sites);

    // chi = 1 MPO of a tensor product of local operators. A zero factor
    // yields the zero-operator sentinel (log_prefactor = -inf).
    static Mpo from_product(const std::vector<LocalOperator>& ops);

    // Lower-triangular construction: dense form equals the boundary-
    // contracted product of the site matrices. Canonicalized on return.
    static Mpo from_triangular(const std::vector<TriangularSiteMatrix>& sites);

    int n_sites() const { return n_sites_; }
    bool is_zero() const { return zero_; }
    bool is_canonical() const { return canonical_; }
    Complex log_prefactor() const { return log_prefactor_; }

    // Bond dimension of interior bond b (1-based, 1..N-1).
    int bond_dim(int bond) const;
    int max_bond_dim() const;

    const Tensor3& site_tensor(int site) const;  // 1-based
    const RVector& lambda(int bond) const;       // 1-based interior bond

    // Dense 2^N x 2^N matrix, including the prefactor. N <= 12.
    CMatrix to_dense() const;

    // tr(rho O) for a product density matrix, one factor per site. Each
    // factor must be Hermitian with unit trace (1e-10).
    Complex expectation(const std::vector<LocalOperator>& rho) const;

    // Restores exact canonical form by a QR sweep followed by an SVD sweep;
    // refreshes every Schmidt vector and folds the norm into the prefactor.
    // Throws DegenerateInputError on a zero-norm MPO.
    void canonicalize();

    // Requires canonical form (throws StateError otherwise).
    SchmidtSpectrum schmidt_spectrum(int bond) const;

    // Standard two-site TEBD update at `bond` (1-based): contracts the
    // neighborhood, applies the 16x16 gate on the composite indices
    // (site-major ordering), re-splits with svd_truncated(chi_max, eps) and
    // renormalizes, accumulating the norm into the prefactor.
    TruncationStats apply_two_site_gate(const CMatrix& gate, int bond, int chi_max, double eps);

    // Contracts a 4x4 gate into one site's composite index. A non-unitary
    // gate breaks strict canonical form; the adjacent bonds are refreshed by
    // identity two-site updates, and the canonical flag is cleared until the
    // next full canonicalize().
    void apply_one_site_gate(const CMatrix& gate, int site);

    // Traces the last site against rho_a: returns the (N-1)-site MPO of
    // tr_a[(1 (x) rho_a) O]. Bond dimensions never increase.
    Mpo partial_trace_last_site(const LocalOperator& rho_a) const;

private:
    friend class MpoBuilder;
    Mpo() = default;

    void mark_zero();
    void refresh_bond(int bond0, double floor_eps);  // identity two-site update, 0-based

    int n_sites_ = 0;
    std::vector<Tensor3> site_;    // B tensors
    std::vector<RVector> lambda_;  // interior bonds, size n_sites-1
    Complex log_prefactor_{0.0, 0.0};
    bool zero_ = false;
    bool canonical_ = false;
};

// Mutable access for constructors, serialization and tests.
class MpoBuilder {
public:
    static Mpo assemble(std::vector<Tensor3> tensors, Complex log_prefactor,
                        bool canonicalize_now = true);
    static Mpo assemble_canonical(std::vector<Tensor3> tensors,
                                  std::vector<RVector> lambdas, Complex log_prefactor,
                                  bool zero, bool canonical);
};

}  // namespace xychain::mpo
