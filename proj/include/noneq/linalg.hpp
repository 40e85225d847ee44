#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noneq/errors.hpp"
#include "noneq/scalar.hpp"

namespace noneq {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatD = Mat<double>;
using VecD = Vec<double>;
using MatR = Mat<Rational>;
using VecR = Vec<Rational>;

template <class T>
T abs_of(const T& x) {
    using std::abs;
    return abs(x);
}

// Largest absolute entry; the scale used by the zero-tolerance policy.
template <class Derived>
typename Derived::Scalar max_abs(const Eigen::MatrixBase<Derived>& m) {
    using T = typename Derived::Scalar;
    T best(0);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            T a = abs_of(T(m(i, j)));
            if (best < a) best = a;
        }
    return best;
}

template <class T>
bool exactly_equal(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

template <class T>
Mat<T> cast_int_matrix(const Eigen::MatrixXi& a) {
    Mat<T> out(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = T(a(i, j));
    return out;
}

inline MatD to_double_matrix(const MatR& a) {
    MatD out(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = a(i, j).to_double();
    return out;
}

namespace linalg {

// Row-pivoted Gaussian elimination with sign tracking. Works for both float
// and exact rational scalars; pivots at or below `pivot_tol` count as zero.
template <class T>
T determinant(Mat<T> a, const T& pivot_tol = T(0)) {
    if (a.rows() != a.cols()) throw DimensionMismatch("determinant needs a square matrix");
    const Eigen::Index n = a.rows();
    T det(1);
    int sign = 1;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        T best = abs_of(a(col, col));
        for (Eigen::Index r = col + 1; r < n; ++r) {
            T cand = abs_of(a(r, col));
            if (best < cand) {
                best = cand;
                pivot = r;
            }
        }
        if (!(best > pivot_tol)) return T(0);
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            sign = -sign;
        }
        det *= a(col, col);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            T factor = a(r, col) / a(col, col);
            for (Eigen::Index c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
        }
    }
    return sign < 0 ? T(-det) : det;
}

// Row echelon rank; `pivot_tol` = 0 gives the exact rank for rationals.
template <class T>
int rank(Mat<T> a, const T& pivot_tol = T(0)) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
        Eigen::Index pivot = row;
        T best = abs_of(a(row, col));
        for (Eigen::Index r = row + 1; r < rows; ++r) {
            T cand = abs_of(a(r, col));
            if (best < cand) {
                best = cand;
                pivot = r;
            }
        }
        if (!(best > pivot_tol)) continue;
        if (pivot != row) a.row(pivot).swap(a.row(row));
        for (Eigen::Index r = row + 1; r < rows; ++r) {
            T factor = a(r, col) / a(row, col);
            for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= factor * a(row, c);
        }
        ++row;
    }
    return static_cast<int>(row);
}

// Solves the square dense system A x = b by partial-pivot elimination.
template <class T>
Vec<T> solve(Mat<T> a, Vec<T> b, const T& pivot_tol = T(0)) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve needs a square matrix");
    if (a.rows() != b.size()) throw DimensionMismatch("solve: rhs size mismatch");
    const Eigen::Index n = a.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        T best = abs_of(a(col, col));
        for (Eigen::Index r = col + 1; r < n; ++r) {
            T cand = abs_of(a(r, col));
            if (best < cand) {
                best = cand;
                pivot = r;
            }
        }
        if (!(best > pivot_tol)) throw SingularSystem("pivot vanished during elimination");
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            std::swap(b(pivot), b(col));
        }
        for (Eigen::Index r = col + 1; r < n; ++r) {
            T factor = a(r, col) / a(col, col);
            for (Eigen::Index c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b(r) -= factor * b(col);
        }
    }
    Vec<T> x(n);
    for (Eigen::Index r = n - 1; r >= 0; --r) {
        T acc = b(r);
        for (Eigen::Index c = r + 1; c < n; ++c) acc -= a(r, c) * x(c);
        x(r) = acc / a(r, r);
    }
    return x;
}

}  // namespace linalg
}  // namespace noneq
