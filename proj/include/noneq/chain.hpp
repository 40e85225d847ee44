#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "noneq/cyclegraph.hpp"
#include "noneq/errors.hpp"
#include "noneq/linalg.hpp"
#include "noneq/scalar.hpp"

namespace noneq {

inline constexpr double kZeroTolBase = 1e-10;
inline constexpr double kSumTolBase = 1e-12;

// Validated infinitesimal generator. Off-diagonal entries are jump rates;
// the diagonal is always recomputed so rows sum to zero exactly.
template <class T>
class Generator {
public:
    // Strict mode (the default) requires every off-diagonal rate positive,
    // which makes the interaction graph complete and the chain irreducible.
    static Generator validate(const Mat<T>& raw, bool strict = true) {
        if (raw.rows() != raw.cols()) throw NotSquare(raw.rows(), raw.cols());
        const int n = static_cast<int>(raw.rows());
        if (n < 2) throw TooSmall("generator", n, 2);
        Mat<T> q = raw;
        for (int i = 0; i < n; ++i) {
            T row_sum(0);
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (strict && !(q(i, j) > T(0))) throw NonPositiveRate(i + 1, j + 1);
                if (!strict && q(i, j) < T(0)) throw NegativeRate(i + 1, j + 1);
                row_sum += q(i, j);
            }
            q(i, i) = -row_sum;
        }
        return Generator(n, std::move(q));
    }

    int size() const { return n_; }
    const Mat<T>& matrix() const { return q_; }

    // 1-based state labels.
    const T& rate(int i, int j) const {
        if (i < 1 || i > n_ || j < 1 || j > n_) throw BadIndex(i, n_);
        return q_(i - 1, j - 1);
    }

    T max_rate() const { return max_abs(q_); }

private:
    Generator(int n, Mat<T> q) : n_(n), q_(std::move(q)) {}
    int n_;
    Mat<T> q_;
};

template <class T>
Generator<T> validate_generator(const Mat<T>& raw, bool strict = true) {
    return Generator<T>::validate(raw, strict);
}

// Probability vector over the n states.
template <class T>
class Distribution {
public:
    // Enforces positivity and unit sum (exact in rational mode).
    static Distribution checked(Vec<T> pi, std::optional<T> sum_tol = std::nullopt) {
        Distribution d(std::move(pi));
        T tol = sum_tol.value_or(scaled_tol<T>(kSumTolBase, T(1)));
        for (int i = 0; i < d.size(); ++i)
            if (!(d.pi_(i) > T(0))) throw NonPositive(i + 1);
        if (abs_of(T(d.sum() - T(1))) > tol)
            throw Error("distribution does not sum to one");
        return d;
    }

    // Empirical variant: zero entries allowed (unvisited states).
    static Distribution empirical(Vec<T> pi) {
        Distribution d(std::move(pi));
        for (int i = 0; i < d.size(); ++i)
            if (d.pi_(i) < T(0)) throw NonPositive(i + 1);
        return d;
    }

    int size() const { return static_cast<int>(pi_.size()); }
    const Vec<T>& vector() const { return pi_; }
    const T& at(int i) const {
        if (i < 1 || i > size()) throw BadIndex(i, size());
        return pi_(i - 1);
    }
    T sum() const { return pi_.sum(); }

private:
    explicit Distribution(Vec<T> pi) : pi_(std::move(pi)) {}
    Vec<T> pi_;
};

// Antisymmetric matrix of stationary currents J_ij = pi_i q_ij - pi_j q_ji.
template <class T>
class CurrentMatrix {
public:
    CurrentMatrix(int n, Mat<T> d) : n_(n), d_(std::move(d)) {
        if (d_.rows() != n_ || d_.cols() != n_)
            throw DimensionMismatch("current matrix must be n x n");
    }

    int size() const { return n_; }
    const Mat<T>& matrix() const { return d_; }
    const T& at(int i, int j) const {
        if (i < 1 || i > n_ || j < 1 || j > n_) throw BadIndex(i, n_);
        return d_(i - 1, j - 1);
    }

private:
    int n_;
    Mat<T> d_;
};

// Stationary distribution: one balance equation is replaced by the
// normalization row, and the resulting nonsingular dense system is solved
// with row-pivoted elimination. Exact in rational mode.
template <class T>
Distribution<T> stationary_distribution(const Generator<T>& g,
                                        std::optional<T> tol = std::nullopt) {
    const int n = g.size();
    Mat<T> a = g.matrix().transpose();
    Vec<T> b = Vec<T>::Zero(n);
    for (int j = 0; j < n; ++j) a(n - 1, j) = T(1);
    b(n - 1) = T(1);

    Vec<T> pi;
    try {
        pi = linalg::solve<T>(std::move(a), std::move(b));
    } catch (const SingularSystem&) {
        throw SingularSystem("stationary system is singular (chain not irreducible?)");
    }

    // Residual gate |pi Q|_inf <= tol * |Q|_inf.
    T residual_tol = tol.value_or(scaled_tol<T>(kZeroTolBase, g.max_rate()));
    Vec<T> residual = g.matrix().transpose() * pi;
    if (max_abs(residual) > residual_tol)
        throw SingularSystem("stationary solve residual exceeds tolerance");
    return Distribution<T>::checked(std::move(pi));
}

// D = Pi Q - (Pi Q)^t, built antisymmetrically so D + D^t = 0 exactly.
template <class T>
CurrentMatrix<T> current_matrix(const Generator<T>& g, const Distribution<T>& pi) {
    const int n = g.size();
    if (pi.size() != n) throw DimensionMismatch("current_matrix: distribution size mismatch");
    Mat<T> d = Mat<T>::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            T flux = pi.vector()(i) * g.matrix()(i, j) - pi.vector()(j) * g.matrix()(j, i);
            d(i, j) = flux;
            d(j, i) = -flux;
        }
    return CurrentMatrix<T>(n, std::move(d));
}

// Upper triangle of D read in theta order: J = (J_12, ..., J_{n-1,n})^t.
template <class T>
KernelVector<T> current_vector(const CurrentMatrix<T>& d) {
    const int n = d.size();
    auto v = KernelVector<T>::zero(n);
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) v.at(theta(i, j, n)) = d.at(i, j);
    return v;
}

template <class T>
bool is_detailed_balance(const Generator<T>& g, const Distribution<T>& pi,
                         std::optional<T> tol = std::nullopt) {
    T t = tol.value_or(scaled_tol<T>(kZeroTolBase, g.max_rate()));
    return !(max_abs(current_matrix(g, pi).matrix()) > t);
}

// Difference of forward and backward rate products around the ring
// 1 -> 2 -> ... -> n -> 1; zero exactly when that cycle is reversible.
template <class T>
T kolmogorov_gap(const Generator<T>& g) {
    const int n = g.size();
    if (n < 3) throw TooSmall("kolmogorov_gap", n, 3);
    T forward(1), backward(1);
    for (int i = 1; i <= n - 1; ++i) {
        forward *= g.rate(i, i + 1);
        backward *= g.rate(i + 1, i);
    }
    return g.rate(n, 1) * forward - g.rate(1, n) * backward;
}

}  // namespace noneq
