#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noneq/chain.hpp"
#include "noneq/cyclespace.hpp"
#include "noneq/errors.hpp"
#include "noneq/linalg.hpp"
#include "noneq/scalar.hpp"

namespace noneq {

inline constexpr double kSolverTolBase = 1e-9;

// The ring system Delta pi^t = (d,...,d,-d)^t tying consecutive ring
// currents to a common value: row i < n carries (q_{i,i+1}, -q_{i+1,i}) at
// columns (i, i+1); row n carries q_{1,n} at column 1 and -q_{n,1} at
// column n.
template <class T>
struct DeltaSystem {
    int n = 0;
    Mat<T> delta;
};

template <class T>
DeltaSystem<T> delta_matrix(const Generator<T>& g) {
    const int n = g.size();
    if (n < 3) throw TooSmall("delta_matrix", n, 3);
    Mat<T> delta = Mat<T>::Zero(n, n);
    for (int i = 1; i <= n - 1; ++i) {
        delta(i - 1, i - 1) = g.rate(i, i + 1);
        delta(i - 1, i) = -g.rate(i + 1, i);
    }
    delta(n - 1, 0) = g.rate(1, n);
    delta(n - 1, n - 1) = -g.rate(n, 1);
    return {n, std::move(delta)};
}

// det(Delta) = q_{1,n} prod q_{i+1,i} - q_{n,1} prod q_{i,i+1}; the negative
// of the Kolmogorov gap of the ring.
template <class T>
T delta_determinant_closed(const Generator<T>& g) {
    const int n = g.size();
    if (n < 3) throw TooSmall("delta_determinant_closed", n, 3);
    T forward(1), backward(1);
    for (int i = 1; i <= n - 1; ++i) {
        forward *= g.rate(i, i + 1);
        backward *= g.rate(i + 1, i);
    }
    return g.rate(1, n) * backward - g.rate(n, 1) * forward;
}

// Magnitude of the larger rate product in the closed determinant; the scale
// for this module's tolerance policy.
template <class T>
T delta_scale(const Generator<T>& g) {
    const int n = g.size();
    T forward(1), backward(1);
    for (int i = 1; i <= n - 1; ++i) {
        forward *= g.rate(i, i + 1);
        backward *= g.rate(i + 1, i);
    }
    T a = abs_of(T(g.rate(1, n) * backward));
    T b = abs_of(T(g.rate(n, 1) * forward));
    return a > b ? a : b;
}

// The ones-row-plus-Delta block of the augmented system, without the
// right-hand column; its row-deleted determinants never involve d.
template <class T>
Mat<T> augmented_block(const Generator<T>& g) {
    const int n = g.size();
    Mat<T> block(n + 1, n);
    block.row(0) = Mat<T>::Constant(1, n, T(1));
    block.bottomRows(n) = delta_matrix(g).delta;
    return block;
}

// Minors Delta_{i,n+1} for i = 1..n+1: delete row i (and the absent
// right-hand column) from the augmented block.
template <class T>
std::vector<T> augmented_minors(const Generator<T>& g) {
    const int n = g.size();
    if (n < 3) throw TooSmall("augmented_minors", n, 3);
    Mat<T> block = augmented_block(g);
    std::vector<T> minors;
    minors.reserve(n + 1);
    for (int drop = 0; drop <= n; ++drop) {
        Mat<T> sub(n, n);
        int r = 0;
        for (int row = 0; row <= n; ++row) {
            if (row == drop) continue;
            sub.row(r++) = block.row(row);
        }
        minors.push_back(linalg::determinant<T>(std::move(sub)));
    }
    return minors;
}

// Determinant of the full (n+1) x (n+1) augmented matrix at a given ring
// current d; vanishes exactly at the solvable d.
template <class T>
T augmented_determinant(const Generator<T>& g, const T& d) {
    const int n = g.size();
    Mat<T> full(n + 1, n + 1);
    full.leftCols(n) = augmented_block(g);
    full(0, n) = T(1);
    for (int i = 1; i <= n - 1; ++i) full(i, n) = d;
    full(n, n) = -d;
    return linalg::determinant<T>(std::move(full));
}

// The unique ring current for which the augmented system is solvable:
//   d = (-1)^{n+1} M_1 / (sum_{i=2}^{n} (-1)^{n+1+i} M_i - M_{n+1}).
template <class T>
T solve_d(const Generator<T>& g, std::optional<T> tol = std::nullopt) {
    const int n = g.size();
    if (n < 3) throw TooSmall("solve_d", n, 3);
    T t = tol.value_or(scaled_tol<T>(kSolverTolBase, delta_scale(g)));
    if (!(abs_of(delta_determinant_closed(g)) > t)) throw ReversibleRing();

    std::vector<T> minors = augmented_minors(g);
    T denom(0);
    for (int i = 2; i <= n; ++i) {
        if ((n + 1 + i) % 2 == 0)
            denom += minors[i - 1];
        else
            denom -= minors[i - 1];
    }
    denom -= minors[n];

    T minor_scale = T(0);
    for (const T& m : minors) {
        T a = abs_of(m);
        if (minor_scale < a) minor_scale = a;
    }
    if (!(abs_of(denom) > scaled_tol<T>(kSolverTolBase, minor_scale))) throw ZeroDenominator();

    T numer = minors[0];
    if ((n + 1) % 2 != 0) numer = -numer;
    return numer / denom;
}

// Closed-form candidate distribution for a prescribed ring current d.
// With r_i = q_{i,i+1}/q_{i+1,i}:
//   pi_1 = (1 + d sum_n A_n) / (1 + sum_n P_{n-1}),
//   pi_n = pi_1 P_{n-1} - d A_n,
// where P_m = prod_{i<=m} r_i and A_n = sum_{i<n} (1/q_{i+1,i}) prod_{j=i+1}^{n-1} r_j.
// Empty products are 1, empty sums 0.
template <class T>
Distribution<T> solve_pi(const Generator<T>& g, const T& d) {
    const int n = g.size();
    if (n < 3) throw TooSmall("solve_pi", n, 3);

    std::vector<T> prod(n + 1), acc(n + 1);
    prod[1] = T(1);
    acc[1] = T(0);
    for (int m = 2; m <= n; ++m) {
        T ratio = g.rate(m - 1, m) / g.rate(m, m - 1);
        prod[m] = prod[m - 1] * ratio;
        acc[m] = acc[m - 1] * ratio + T(1) / g.rate(m, m - 1);
    }

    T denom(1), dsum(0);
    for (int m = 2; m <= n; ++m) {
        denom += prod[m];
        dsum += acc[m];
    }

    Vec<T> pi(n);
    pi(0) = (T(1) + d * dsum) / denom;
    for (int m = 2; m <= n; ++m) pi(m - 1) = pi(0) * prod[m] - d * acc[m];
    for (int m = 1; m <= n; ++m)
        if (!(pi(m - 1) > T(0))) throw NonPositive(m);
    return Distribution<T>::checked(std::move(pi));
}

// Outcome of the closed-form solve. valid=false is an ordinary result: the
// candidate exists but the chain's currents do not concentrate on the ring.
template <class T>
struct OneNEResult {
    Distribution<T> pi;
    T d{};
    bool valid = false;
    T residual{};  // |D - d(Lambda - Lambda^t)|_inf at the candidate
};

template <class T>
OneNEResult<T> solve_one_ne(const Generator<T>& g, std::optional<T> tol = std::nullopt) {
    const int n = g.size();
    if (n < 3) throw TooSmall("solve_one_ne", n, 3);
    T d = solve_d(g, tol);
    Distribution<T> pi = solve_pi(g, d);

    Mat<T> currents = current_matrix(g, pi).matrix();
    Mat<T> target = d * lambda_antisym<T>(n, 1).matrix();
    T residual = max_abs(Mat<T>(currents - target));

    // The residual lives on the scale of the currents, not of the rate
    // products that gate the determinant checks.
    T current_scale = g.max_rate();
    if (current_scale < T(1)) current_scale = T(1);
    T t = tol.value_or(scaled_tol<T>(kSolverTolBase, current_scale));
    T sum_gap = abs_of(T(pi.sum() - T(1)));
    bool valid = !(residual > t) && !(sum_gap > scaled_tol<T>(kSumTolBase, T(1)));
    return OneNEResult<T>{std::move(pi), std::move(d), valid, std::move(residual)};
}

}  // namespace noneq
