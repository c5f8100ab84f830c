#pragma once

#include <Eigen/Dense>
#include <complex>

namespace xychain::pauli {

// Local physical dimension is 2 throughout; basis |0> = up, |1> = down,
// so sz = diag(1,-1) and sp = |up><down|.
using LocalOperator = Eigen::Matrix2cd;

inline const LocalOperator& id() {
    static const LocalOperator m = LocalOperator::Identity();
    return m;
}

inline const LocalOperator& sx() {
    static const LocalOperator m = (LocalOperator() << 0, 1, 1, 0).finished();
    return m;
}

inline const LocalOperator& sy() {
    using namespace std::complex_literals;
    static const LocalOperator m = (LocalOperator() << 0, -1i, 1i, 0).finished();
    return m;
}

inline const LocalOperator& sz() {
    static const LocalOperator m = (LocalOperator() << 1, 0, 0, -1).finished();
    return m;
}

inline const LocalOperator& sp() {
    static const LocalOperator m = (LocalOperator() << 0, 1, 0, 0).finished();
    return m;
}

inline const LocalOperator& sm() {
    static const LocalOperator m = (LocalOperator() << 0, 0, 1, 0).finished();
    return m;
}

inline LocalOperator zero() { return LocalOperator::Zero(); }

// Projectors |up><up| and |down><down| as density matrices.
inline LocalOperator up_state() {
    return (LocalOperator() << 1, 0, 0, 0).finished();
}

inline LocalOperator down_state() {
    return (LocalOperator() << 0, 0, 0, 1).finished();
}

}  // namespace xychain::pauli
