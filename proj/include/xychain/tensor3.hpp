#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "xychain/linalg.hpp"

namespace xychain::mpo {

using linalg::CMatrix;
using linalg::Complex;

// Rank-3 site tensor with index order (left bond, physical, right bond) and
// the left index fastest. With this layout both matrix unfoldings
// (l*d, r) and (l, d*r) alias the same buffer.
struct Tensor3 {
    int chi_l = 0;
    int d = 0;
    int chi_r = 0;
    std::vector<Complex> data;

    Tensor3() = default;
    Tensor3(int l, int phys, int r)
        : chi_l(l), d(phys), chi_r(r),
          data(static_cast<size_t>(l) * phys * r, Complex(0, 0)) {}

    Complex& at(int l, int m, int r) {
        return data[static_cast<size_t>(l) + static_cast<size_t>(chi_l) * (m + static_cast<size_t>(d) * r)];
    }
    const Complex& at(int l, int m, int r) const {
        return data[static_cast<size_t>(l) + static_cast<size_t>(chi_l) * (m + static_cast<size_t>(d) * r)];
    }

    Eigen::Map<const CMatrix> as_lm_r() const {
        return Eigen::Map<const CMatrix>(data.data(), static_cast<Eigen::Index>(chi_l) * d, chi_r);
    }
    Eigen::Map<const CMatrix> as_l_mr() const {
        return Eigen::Map<const CMatrix>(data.data(), chi_l, static_cast<Eigen::Index>(d) * chi_r);
    }

    // Builds a tensor from its (l*d, r) unfolding.
    static Tensor3 from_lm_r(const CMatrix& m, int chi_l, int d) {
        Tensor3 t(chi_l, d, static_cast<int>(m.cols()));
        Eigen::Map<CMatrix>(t.data.data(), m.rows(), m.cols()) = m;
        return t;
    }

    // Builds a tensor from its (l, d*r) unfolding.
    static Tensor3 from_l_mr(const CMatrix& m, int d) {
        Tensor3 t(static_cast<int>(m.rows()), d, static_cast<int>(m.cols()) / d);
        Eigen::Map<CMatrix>(t.data.data(), m.rows(), m.cols()) = m;
        return t;
    }

    double squared_norm() const {
        double s = 0;
        for (const auto& z : data) s += std::norm(z);
        return s;
    }
};

}  // namespace xychain::mpo
