#include "xychain/superop.hpp"

namespace xychain::superop {

using linalg::CVector;

CVector vec_row(const CMatrix& o) {
    CVector v(o.size());
    for (Eigen::Index j = 0; j < o.rows(); ++j)
        for (Eigen::Index k = 0; k < o.cols(); ++k)
            v(j * o.cols() + k) = o(j, k);
    return v;
}

CMatrix unvec_row(const CVector& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols)
        throw DimensionError("unvec_row: size mismatch");
    CMatrix o(rows, cols);
    for (int j = 0; j < rows; ++j)
        for (int k = 0; k < cols; ++k)
            o(j, k) = v(j * cols + k);
    return o;
}

CMatrix conjugation_superop(const CMatrix& u) {
    return linalg::kron(u, u.conjugate());
}

CMatrix adjoint_hamiltonian_generator(const CMatrix& h) {
    if (h.rows() != h.cols())
        throw DimensionError("adjoint_hamiltonian_generator: h must be square");
    const CMatrix id = CMatrix::Identity(h.rows(), h.cols());
    return linalg::Complex(0, 1) * (linalg::kron(h, id) - linalg::kron(id, h.transpose()));
}

CMatrix adjoint_dissipator_generator(const std::vector<CMatrix>& lindblads) {
    if (lindblads.empty())
        throw DimensionError("adjoint_dissipator_generator: no Lindblad operators");
    const Eigen::Index d = lindblads.front().rows();
    const CMatrix id = CMatrix::Identity(d, d);
    CMatrix k = CMatrix::Zero(d * d, d * d);
    for (const auto& l : lindblads) {
        if (l.rows() != d || l.cols() != d)
            throw DimensionError("adjoint_dissipator_generator: inconsistent dimensions");
        const CMatrix ll = l.adjoint() * l;
        k += linalg::kron(l.adjoint(), l.transpose());
        k -= 0.5 * linalg::kron(ll, id);
        k -= 0.5 * linalg::kron(id, ll.transpose());
    }
    return k;
}

CMatrix two_site_gate_to_mpo_order(const CMatrix& g) {
    if (g.rows() != 16 || g.cols() != 16)
        throw DimensionError("two_site_gate_to_mpo_order: expected 16x16 gate");
    // Flattened two-site operator index: (j1 j2 k1 k2); MPO order: (j1 k1 j2 k2).
    int perm[16];
    for (int v = 0; v < 16; ++v) {
        const int j1 = (v >> 3) & 1, j2 = (v >> 2) & 1, k1 = (v >> 1) & 1, k2 = v & 1;
        perm[v] = (j1 << 3) | (k1 << 2) | (j2 << 1) | k2;
    }
    CMatrix out(16, 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            out(perm[r], perm[c]) = g(r, c);
    return out;
}

}  // namespace xychain::superop
