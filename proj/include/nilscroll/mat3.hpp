#pragma once

#include <array>

#include "nilscroll/paracomplex.hpp"

namespace nilscroll {

/// Row-major 3x3 real matrix.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int r, int c) { return m[3 * r + c]; }
    double operator()(int r, int c) const { return m[3 * r + c]; }

    static Mat3 identity() {
        Mat3 I;
        I(0, 0) = I(1, 1) = I(2, 2) = 1.0;
        return I;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const {
        return (*this)(0, 0) * ((*this)(1, 1) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 1)) -
               (*this)(0, 1) * ((*this)(1, 0) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 0)) +
               (*this)(0, 2) * ((*this)(1, 0) * (*this)(2, 1) - (*this)(1, 1) * (*this)(2, 0));
    }

    std::array<double, 3> col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
};

/// Row vector times matrix, the action the Lorentz group uses here.
inline std::array<double, 3> row_mul(const std::array<double, 3>& v, const Mat3& M) {
    std::array<double, 3> r{};
    for (int j = 0; j < 3; ++j) r[j] = v[0] * M(0, j) + v[1] * M(1, j) + v[2] * M(2, j);
    return r;
}

inline std::array<ParaComplex, 3> row_mul(const std::array<ParaComplex, 3>& v, const Mat3& M) {
    std::array<ParaComplex, 3> r;
    for (int j = 0; j < 3; ++j) r[j] = v[0] * M(0, j) + v[1] * M(1, j) + v[2] * M(2, j);
    return r;
}

}  // namespace nilscroll
