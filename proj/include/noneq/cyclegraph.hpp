#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noneq/errors.hpp"
#include "noneq/linalg.hpp"
#include "noneq/scalar.hpp"

namespace noneq {

// States are 1-based throughout the public surface. Edges of the complete
// interaction graph are the ordered pairs (i,j) with 1 <= i < j <= n; theta
// maps them bijectively and lexicographically onto {1,...,C(n,2)}.

inline int edge_count(int n) { return n * (n - 1) / 2; }

inline int theta(int i, int j, int n) {
    if (!(1 <= i && i < j && j <= n)) throw BadEdge(i, j, n);
    // S(i) = (i-1)(n - i/2), computed in integers as (i-1)(2n-i)/2.
    long long s = static_cast<long long>(i - 1) * (2LL * n - i) / 2;
    return static_cast<int>(s + j - i);
}

inline std::pair<int, int> theta_inverse(int r, int n) {
    if (r < 1 || r > edge_count(n)) throw BadIndex(r, n);
    int rem = r;
    for (int i = 1; i < n; ++i) {
        if (rem <= n - i) return {i, i + rem};
        rem -= n - i;
    }
    throw BadIndex(r, n);  // unreachable
}

// Residue of m in {1,...,n} with [n] = n.
inline int mod1(long long m, int n) {
    long long r = m % n;
    if (r <= 0) r += n;
    return static_cast<int>(r);
}

// Vertex-by-edge incidence matrix: column theta(i,j) holds -1 in row i and
// +1 in row j.
struct IncidenceMatrix {
    int n = 0;
    Eigen::MatrixXi gamma;
};

inline IncidenceMatrix incidence_matrix(int n) {
    if (n < 2) throw TooSmall("incidence_matrix", n, 2);
    Eigen::MatrixXi gamma = Eigen::MatrixXi::Zero(n, edge_count(n));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            int r = theta(i, j, n);
            gamma(i - 1, r - 1) = -1;
            gamma(j - 1, r - 1) = 1;
        }
    return {n, gamma};
}

// Edge-indexed vector over the theta ordering: cycles, or currents.
template <class T>
class KernelVector {
public:
    KernelVector(int n, Vec<T> entries) : n_(n), e_(std::move(entries)) {
        if (e_.size() != edge_count(n_))
            throw DimensionMismatch("kernel vector needs C(n,2) entries");
    }
    static KernelVector zero(int n) { return KernelVector(n, Vec<T>::Zero(edge_count(n))); }

    int states() const { return n_; }
    int size() const { return static_cast<int>(e_.size()); }
    const Vec<T>& vector() const { return e_; }

    // 1-based edge index access.
    const T& at(int r) const { return e_(check(r)); }
    T& at(int r) { return e_(check(r)); }

private:
    int check(int r) const {
        if (r < 1 || r > size()) throw BadIndex(r, n_);
        return r - 1;
    }
    int n_;
    Vec<T> e_;
};

// The minimum-length cycle through vertices (i, i+1, i+1+j).
struct BasisTriple {
    int i;
    int j;
    int first() const { return i; }
    int second() const { return i + 1; }
    int third() const { return i + 1 + j; }
};

// Index ranges 1 <= i <= n-2, 1 <= j <= n-(i+1), in (i,j) lexicographic
// order; C(n-1,2) triples in total.
inline std::vector<BasisTriple> basis_triples(int n) {
    if (n < 3) throw TooSmall("basis_triples", n, 3);
    std::vector<BasisTriple> out;
    out.reserve(edge_count(n - 1));
    for (int i = 1; i <= n - 2; ++i)
        for (int j = 1; j <= n - (i + 1); ++j) out.push_back({i, j});
    return out;
}

// Flat position of the triple (i, i+1, i+1+j) in the canonical order.
inline int basis_index(int i, int j, int n) {
    return (i - 1) * (2 * n - i - 2) / 2 + (j - 1);
}

template <class T>
KernelVector<T> basis_cycle_vector(const BasisTriple& t, int n) {
    auto v = KernelVector<T>::zero(n);
    v.at(theta(t.first(), t.second(), n)) = T(1);
    v.at(theta(t.second(), t.third(), n)) = T(1);
    v.at(theta(t.first(), t.third(), n)) = T(-1);
    return v;
}

// The C(n-1,2) minimum-length cycles spanning ker of the incidence matrix.
template <class T>
std::vector<KernelVector<T>> basis_cycles(int n) {
    std::vector<KernelVector<T>> out;
    for (const auto& t : basis_triples(n)) out.push_back(basis_cycle_vector<T>(t, n));
    return out;
}

// Vertex sequence [k],[2k],...,[nk],[k].
inline std::vector<int> k_closed_path(int n, int k) {
    if (k < 1 || k > n) throw BadStep(k, n);
    std::vector<int> seq;
    seq.reserve(n + 1);
    for (int i = 1; i <= n; ++i) seq.push_back(mod1(static_cast<long long>(i) * k, n));
    seq.push_back(seq.front());
    return seq;
}

// The k-closed-path is a Hamiltonian cycle exactly when gcd(k,n) = 1.
inline bool is_k_hamiltonian(int n, int k) {
    if (k < 1 || k > n) throw BadStep(k, n);
    return std::gcd(k, n) == 1;
}

// Edge-signed representation of the k-cycle: +1 on edges traveled in the
// lexicographic direction, -1 on edges traveled against it.
template <class T>
KernelVector<T> k_cycle_vector(int n, int k) {
    if (n < 3) throw TooSmall("k_cycle_vector", n, 3);
    if (k < 1 || k > n) throw BadStep(k, n);
    if (std::gcd(k, n) != 1) throw NotHamiltonian(n, k);
    auto v = KernelVector<T>::zero(n);
    for (int i = 1; i <= n; ++i) {
        int a = mod1(static_cast<long long>(i) * k, n);
        int b = mod1(static_cast<long long>(i + 1) * k, n);
        if (a < b)
            v.at(theta(a, b, n)) = T(1);
        else
            v.at(theta(b, a, n)) = T(-1);
    }
    return v;
}

// True when Gamma * v vanishes within tol, i.e. v lies in the cycle space.
template <class T>
bool kernel_check(const IncidenceMatrix& gamma, const KernelVector<T>& v, const T& tol) {
    if (gamma.n != v.states() || gamma.gamma.cols() != v.size())
        throw DimensionMismatch("kernel_check: incidence and vector sizes disagree");
    for (int row = 0; row < gamma.n; ++row) {
        T acc(0);
        for (int c = 0; c < gamma.gamma.cols(); ++c) {
            int g = gamma.gamma(row, c);
            if (g == 1)
                acc += v.vector()(c);
            else if (g == -1)
                acc -= v.vector()(c);
        }
        if (abs_of(acc) > tol) return false;
    }
    return true;
}

}  // namespace noneq
