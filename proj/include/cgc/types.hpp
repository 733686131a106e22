#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace cgc {

using Real = double;
using Complex = std::complex<double>;

inline constexpr Real kPi = 3.14159265358979323846;

using Mat2C = Eigen::Matrix2cd;
using Mat2R = Eigen::Matrix2d;
using Vec2C = Eigen::Vector2cd;
using Vec4R = Eigen::Vector4d;
using Vec4C = Eigen::Vector4cd;

/// Unit-determinant 2x2 complex matrix. Free functions renormalize after
/// numerical operations; |det - 1| <= 1e-12 is the working invariant.
using SL2C = Mat2C;

using RealField = Eigen::ArrayXXd;     // (ny rows, nx cols)
using ComplexField = Eigen::ArrayXXcd;

/// Rectangular lattice of per-node values for non-scalar types.
template <class T>
class Grid {
public:
    Grid() = default;
    Grid(int rows, int cols, const T& init = T{})
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, init) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int row, int col) { return data_[static_cast<size_t>(row) * cols_ + col]; }
    const T& operator()(int row, int col) const {
        return data_[static_cast<size_t>(row) * cols_ + col];
    }

    std::vector<T>& raw() { return data_; }
    const std::vector<T>& raw() const { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

inline const Mat2C& pauli_e0() {
    static const Mat2C m = Mat2C::Identity();
    return m;
}
inline const Mat2C& pauli_e1() {
    static const Mat2C m = (Mat2C() << 1, 0, 0, -1).finished();
    return m;
}
inline const Mat2C& pauli_e2() {
    static const Mat2C m = (Mat2C() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}
inline const Mat2C& pauli_e3() {
    static const Mat2C m = (Mat2C() << 0, 1, 1, 0).finished();
    return m;
}

/// Rescale to unit determinant (principal square root of det).
inline void normalize_det(SL2C& g) {
    const Complex d = g.determinant();
    g /= std::sqrt(d);
}

}  // namespace cgc
