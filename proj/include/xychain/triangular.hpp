#pragma once

#include <vector>

#include "xychain/linalg.hpp"
#include "xychain/pauli.hpp"

namespace xychain::mpo {

using pauli::LocalOperator;

// Square block matrix of local operators with zero blocks above the
// diagonal, plus boundary vectors. The default boundaries <L| = (0,...,0,1)
// and |R> = (1,0,...,0)^T select the bottom-left accumulated operator of the
// block matrix product.
struct TriangularSiteMatrix {
    int chi = 0;
    std::vector<std::vector<LocalOperator>> blocks;  // blocks[row][col]
    linalg::CVector left_boundary;
    linalg::CVector right_boundary;

    static TriangularSiteMatrix make(int chi);

    LocalOperator& block(int row, int col) { return blocks[row][col]; }
    const LocalOperator& block(int row, int col) const { return blocks[row][col]; }

    // Throws StructureError if any block above the diagonal is nonzero.
    void validate() const;
};

// Kronecker product of two site matrices: bond spaces combine by tensor
// product and the operator entries multiply, (a (x) b)[(i i'),(j j')] =
// a[i][j] * b[i'][j']. Encodes the product of the two represented operators.
TriangularSiteMatrix triangular_product(const TriangularSiteMatrix& a,
                                        const TriangularSiteMatrix& b);

}  // namespace xychain::mpo
