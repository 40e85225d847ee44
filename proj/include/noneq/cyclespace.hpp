#pragma once

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noneq/chain.hpp"
#include "noneq/cyclegraph.hpp"
#include "noneq/errors.hpp"
#include "noneq/linalg.hpp"
#include "noneq/scalar.hpp"

namespace noneq {

// Zero tolerance for membership and detection checks. The scale is floored
// at one so that chains sitting numerically at equilibrium (currents that
// are pure rounding noise) still test as members.
template <class T>
T default_space_tol(const Mat<T>& m) {
    T scale = max_abs(m);
    if (scale < T(1)) scale = T(1);
    return scaled_tol<T>(kZeroTolBase, scale);
}

// Deviation of m from the space of antisymmetric matrices with zero row
// sums: max of |m + m^t|_inf and the largest row-sum magnitude.
template <class T>
T space_residual(const Mat<T>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("space_residual needs a square matrix");
    T worst = max_abs(Mat<T>(m + m.transpose()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        T row_sum = m.row(i).sum();
        T a = abs_of(row_sum);
        if (worst < a) worst = a;
    }
    return worst;
}

// Element of the space of antisymmetric zero-row-sum matrices. Images of
// cycles under the edge-vector isomorphism land here.
template <class T>
class CycleMatrix {
public:
    static CycleMatrix checked(Mat<T> m, std::optional<T> tol = std::nullopt) {
        T t = tol.value_or(default_space_tol(m));
        T dev = space_residual(m);
        if (dev > t) throw NotInSpace("matrix is not antisymmetric with zero row sums");
        return CycleMatrix(std::move(m));
    }

    // For construction paths that are antisymmetric by algebra.
    static CycleMatrix unchecked(Mat<T> m) { return CycleMatrix(std::move(m)); }

    int size() const { return static_cast<int>(m_.rows()); }
    const Mat<T>& matrix() const { return m_; }
    const T& at(int i, int j) const {
        if (i < 1 || i > size() || j < 1 || j > size()) throw BadIndex(i, size());
        return m_(i - 1, j - 1);
    }

private:
    explicit CycleMatrix(Mat<T> m) : m_(std::move(m)) {}
    Mat<T> m_;
};

// The isomorphism between edge-indexed kernel vectors and cycle matrices:
// M_ij = v[theta(i,j)] above the diagonal, antisymmetric completion below.
template <class T>
CycleMatrix<T> phi(const KernelVector<T>& v) {
    const int n = v.states();
    Mat<T> m = Mat<T>::Zero(n, n);
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const T& c = v.at(theta(i, j, n));
            m(i - 1, j - 1) = c;
            m(j - 1, i - 1) = -c;
        }
    return CycleMatrix<T>::unchecked(std::move(m));
}

template <class T>
KernelVector<T> phi_inverse(const Mat<T>& m, std::optional<T> tol = std::nullopt) {
    const int n = static_cast<int>(m.rows());
    T t = tol.value_or(default_space_tol(m));
    if (space_residual(m) > t)
        throw NotInSpace("phi_inverse input is not antisymmetric with zero row sums");
    auto v = KernelVector<T>::zero(n);
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) v.at(theta(i, j, n)) = m(i - 1, j - 1);
    return v;
}

template <class T>
KernelVector<T> phi_inverse(const CycleMatrix<T>& m, std::optional<T> tol = std::nullopt) {
    return phi_inverse(m.matrix(), tol);
}

// Basis cycle matrix for the triple (i, i+1, i+1+j): +1 at (i,i+1),
// (i+1,i+1+j), (i+1+j,i) and -1 at the transposed slots.
template <class T>
CycleMatrix<T> basis_cycle_matrix(const BasisTriple& t, int n) {
    Mat<T> m = Mat<T>::Zero(n, n);
    const int a = t.first() - 1, b = t.second() - 1, c = t.third() - 1;
    m(a, b) = T(1);
    m(b, c) = T(1);
    m(c, a) = T(1);
    m(b, a) = T(-1);
    m(c, b) = T(-1);
    m(a, c) = T(-1);
    return CycleMatrix<T>::unchecked(std::move(m));
}

template <class T>
std::vector<CycleMatrix<T>> cycle_matrix_basis(int n) {
    if (n < 3) throw TooSmall("cycle_matrix_basis", n, 3);
    std::vector<CycleMatrix<T>> out;
    for (const auto& t : basis_triples(n)) out.push_back(basis_cycle_matrix<T>(t, n));
    return out;
}

// Circulant shift power: entry (i,j) is 1 exactly when j = [i+k].
template <class T>
Mat<T> circulant_power(int n, int k) {
    if (k < 1 || k > n) throw BadPower(k, n);
    Mat<T> m = Mat<T>::Zero(n, n);
    for (int i = 1; i <= n; ++i) m(i - 1, mod1(i + k, n) - 1) = T(1);
    return m;
}

// Lambda^k - (Lambda^k)^t. k = n gives the zero matrix and is rejected.
template <class T>
CycleMatrix<T> lambda_antisym(int n, int k) {
    if (k < 1 || k > n - 1) throw BadPower(k, n);
    Mat<T> lk = circulant_power<T>(n, k);
    return CycleMatrix<T>::unchecked(Mat<T>(lk - lk.transpose()));
}

// Coefficients over the canonical cycle-matrix basis, keyed by the triples
// (i, i+1, i+1+j) in lexicographic (i,j) order.
template <class T>
class CycleDecomposition {
public:
    CycleDecomposition(int n, std::vector<T> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
        if (static_cast<int>(coeffs_.size()) != edge_count(n - 1))
            throw DimensionMismatch("decomposition needs C(n-1,2) coefficients");
    }

    int states() const { return n_; }
    int count() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<T>& coefficients() const { return coeffs_; }
    const T& coefficient(const BasisTriple& t) const {
        return coeffs_.at(basis_index(t.i, t.j, n_));
    }
    const T& coefficient(int i, int j) const { return coeffs_.at(basis_index(i, j, n_)); }

private:
    int n_;
    std::vector<T> coeffs_;
};

template <class T>
CycleMatrix<T> reconstruct(const CycleDecomposition<T>& c) {
    const int n = c.states();
    Mat<T> m = Mat<T>::Zero(n, n);
    for (const auto& t : basis_triples(n)) {
        const T& d = c.coefficient(t);
        const int a = t.first() - 1, b = t.second() - 1, e = t.third() - 1;
        m(a, b) += d;
        m(b, e) += d;
        m(e, a) += d;
        m(b, a) -= d;
        m(e, b) -= d;
        m(a, e) -= d;
    }
    return CycleMatrix<T>::unchecked(std::move(m));
}

// Basis coefficients of d_mat. Every chord (a,b), b > a+1, lies in exactly
// two basis cycles, so the coefficients follow by forward substitution over
// chord columns:  d_{a,a+1,b} = -sum_{t<=a} D_{t,b}.
// The result is verified by reconstruction.
template <class T>
CycleDecomposition<T> decompose(const Mat<T>& d_mat, std::optional<T> tol = std::nullopt) {
    const int n = static_cast<int>(d_mat.rows());
    if (n < 3) throw TooSmall("decompose", n, 3);
    T t = tol.value_or(default_space_tol(d_mat));
    if (space_residual(d_mat) > t)
        throw NotInSpace("decompose input is not antisymmetric with zero row sums");

    std::vector<T> coeffs(edge_count(n - 1), T(0));
    for (int b = 3; b <= n; ++b) {
        T prefix(0);
        for (int a = 1; a <= b - 2; ++a) {
            prefix += d_mat(a - 1, b - 1);
            coeffs[basis_index(a, b - a - 1, n)] = -prefix;
        }
    }

    CycleDecomposition<T> result(n, std::move(coeffs));
    T residual = max_abs(Mat<T>(reconstruct(result).matrix() - d_mat));
    if (residual > t)
        throw ReconstructionResidual("cycle decomposition does not reproduce the input");
    return result;
}

template <class T>
CycleDecomposition<T> decompose(const CycleMatrix<T>& d_mat, std::optional<T> tol = std::nullopt) {
    return decompose(d_mat.matrix(), tol);
}

template <class T>
CycleDecomposition<T> decompose(const CurrentMatrix<T>& d_mat, std::optional<T> tol = std::nullopt) {
    return decompose(d_mat.matrix(), tol);
}

template <class T>
struct KDetection {
    int k = 0;
    T d{};
    bool coprime = false;  // gcd(k,n) == 1, i.e. the pattern is a Hamiltonian cycle
};

// Scans k = 1..floor(n/2) for d_mat = d (Lambda^k - (Lambda^k)^t) with
// d != 0; the scalar is read from entry (1,[1+k]) and then checked
// globally. Smallest k wins; absence (equilibrium included) is an
// ordinary empty result.
template <class T>
std::optional<KDetection<T>> detect_k_nonequilibrium(const Mat<T>& d_mat,
                                                     std::optional<T> tol = std::nullopt) {
    const int n = static_cast<int>(d_mat.rows());
    if (n < 3) throw TooSmall("detect_k_nonequilibrium", n, 3);
    T t = tol.value_or(default_space_tol(d_mat));
    if (space_residual(d_mat) > t)
        throw NotInSpace("detection input is not antisymmetric with zero row sums");

    for (int k = 1; k <= n / 2; ++k) {
        T d = d_mat(0, mod1(1 + k, n) - 1);
        if (!(abs_of(d) > t)) continue;
        Mat<T> pattern = lambda_antisym<T>(n, k).matrix();
        if (!(max_abs(Mat<T>(d_mat - d * pattern)) > t))
            return KDetection<T>{k, d, std::gcd(k, n) == 1};
    }
    return std::nullopt;
}

template <class T>
std::optional<KDetection<T>> detect_k_nonequilibrium(const CurrentMatrix<T>& d_mat,
                                                     std::optional<T> tol = std::nullopt) {
    return detect_k_nonequilibrium(d_mat.matrix(), tol);
}

}  // namespace noneq
