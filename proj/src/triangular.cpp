#include "xychain/triangular.hpp"

#include "xychain/errors.hpp"

namespace xychain::mpo {

TriangularSiteMatrix TriangularSiteMatrix::make(int chi) {
    if (chi < 1) throw StructureError("TriangularSiteMatrix: chi must be >= 1");
    TriangularSiteMatrix t;
    t.chi = chi;
    t.blocks.assign(chi, std::vector<LocalOperator>(chi, pauli::zero()));
    t.left_boundary = linalg::CVector::Zero(chi);
    t.left_boundary(chi - 1) = 1.0;
    t.right_boundary = linalg::CVector::Zero(chi);
    t.right_boundary(0) = 1.0;
    return t;
}

void TriangularSiteMatrix::validate() const {
    if (chi < 1 || static_cast<int>(blocks.size()) != chi)
        throw StructureError("TriangularSiteMatrix: inconsistent block count");
    for (int i = 0; i < chi; ++i) {
        if (static_cast<int>(blocks[i].size()) != chi)
            throw StructureError("TriangularSiteMatrix: ragged block row");
        for (int j = i + 1; j < chi; ++j)
            if (blocks[i][j].cwiseAbs().maxCoeff() > 0.0)
                throw StructureError("TriangularSiteMatrix: nonzero block above the diagonal at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
    }
    if (left_boundary.size() != chi || right_boundary.size() != chi)
        throw StructureError("TriangularSiteMatrix: boundary vector size mismatch");
}

TriangularSiteMatrix triangular_product(const TriangularSiteMatrix& a,
                                        const TriangularSiteMatrix& b) {
    a.validate();
    b.validate();
    TriangularSiteMatrix out = TriangularSiteMatrix::make(a.chi * b.chi);
    for (int i = 0; i < a.chi; ++i)
        for (int j = 0; j < a.chi; ++j)
            for (int ip = 0; ip < b.chi; ++ip)
                for (int jp = 0; jp < b.chi; ++jp)
                    out.block(i * b.chi + ip, j * b.chi + jp) = a.block(i, j) * b.block(ip, jp);
    for (int i = 0; i < a.chi; ++i)
        for (int ip = 0; ip < b.chi; ++ip) {
            out.left_boundary(i * b.chi + ip) = a.left_boundary(i) * b.left_boundary(ip);
            out.right_boundary(i * b.chi + ip) = a.right_boundary(i) * b.right_boundary(ip);
        }
    return out;
}

}  // namespace xychain::mpo
