#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noneq/chain.hpp"
#include "noneq/cyclegraph.hpp"
#include "noneq/errors.hpp"
#include "noneq/linalg.hpp"
#include "noneq/rng.hpp"
#include "noneq/scalar.hpp"

namespace noneq {

// Prescription for a chain whose currents concentrate on the ring with a
// known scalar d: the stationary distribution, the ring current, the
// forward ring rates, and the forward chord rates are all chosen; the
// reverse rates are derived.
template <class T>
struct SynthSpec {
    int n = 0;
    Vec<T> pi;             // prescribed stationary distribution
    T d{};                 // ring current (0 gives a detailed-balance chain)
    Vec<T> ring_forward;   // q_{i,[i+1]}, length n
    Mat<T> chord_forward;  // q_{ij} for non-ring pairs i < j (other entries ignored)
    std::uint64_t seed = 0;
};

namespace detail {

// Shared construction for any shift k: forward rates on edges (i,[i+k])
// carry current d; every other pair is balanced. Reverse ring rates
// q_{[i+k],i} = (pi_i q_{i,[i+k]} - d)/pi_{[i+k]}, chord reverse rates
// q_{ji} = pi_i q_{ij}/pi_j. Each state then carries one +d and one -d
// current, so pi is stationary by construction.
template <class T>
Generator<T> synth_k_shifted(int n, int k, const Vec<T>& pi, const T& d,
                             const Vec<T>& ring_forward, const Mat<T>& chord_forward) {
    if (n < 3) throw TooSmall("synthesis", n, 3);
    if (k < 1 || 2 * k >= n + 1) throw BadPower(k, n);
    if (2 * k == n) throw Infeasible("shift k = n/2 pairs each edge with itself; no orientation carries a current");
    if (pi.size() != n || ring_forward.size() != n)
        throw DimensionMismatch("synthesis: prescription sizes disagree");
    for (int i = 0; i < n; ++i)
        if (!(pi(i) > T(0))) throw NonPositive(i + 1);

    Mat<T> q = Mat<T>::Zero(n, n);
    std::vector<bool> is_ring(n * n, false);
    for (int i = 1; i <= n; ++i) {
        int j = mod1(i + k, n);
        if (!(ring_forward(i - 1) > T(0))) throw Infeasible(i, j, "forward rate not positive");
        T reverse = (pi(i - 1) * ring_forward(i - 1) - d) / pi(j - 1);
        if (!(reverse > T(0))) throw Infeasible(j, i, "derived reverse rate not positive");
        q(i - 1, j - 1) = ring_forward(i - 1);
        q(j - 1, i - 1) = reverse;
        is_ring[(i - 1) * n + (j - 1)] = true;
        is_ring[(j - 1) * n + (i - 1)] = true;
    }
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (is_ring[(i - 1) * n + (j - 1)]) continue;
            T forward = chord_forward(i - 1, j - 1);
            if (!(forward > T(0))) throw Infeasible(i, j, "chord rate not positive");
            q(i - 1, j - 1) = forward;
            q(j - 1, i - 1) = pi(i - 1) * forward / pi(j - 1);
        }
    return Generator<T>::validate(q);
}

}  // namespace detail

template <class T>
Generator<T> synth_one_ne(const SynthSpec<T>& spec) {
    return detail::synth_k_shifted<T>(spec.n, 1, spec.pi, spec.d, spec.ring_forward,
                                      spec.chord_forward);
}

enum class Regime { Equilibrium, OneNE, KNE, Generic };

inline Regime parse_regime(const std::string& name) {
    if (name == "equilibrium") return Regime::Equilibrium;
    if (name == "one-ne" || name == "one_ne") return Regime::OneNE;
    if (name == "k-ne" || name == "k_ne") return Regime::KNE;
    if (name == "generic") return Regime::Generic;
    throw ParseError("unknown regime '" + name + "'");
}

// Deterministic in (regime, n, k, seed). Rates land in [0.1, 10]; the
// prescribed distribution is a normalized vector of exponential draws and
// the ring current is sampled inside the feasibility bound.
inline Generator<double> random_instance(int n, Regime regime, std::uint64_t seed, int k = 1) {
    if (n < 3) throw TooSmall("random_instance", n, 3);
    Rng rng(seed);

    auto sample_pi = [&] {
        VecD pi(n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            pi(i) = rng.exponential(1.0);
            total += pi(i);
        }
        for (int i = 0; i < n; ++i) pi(i) /= total;
        return pi;
    };
    auto sample_rate = [&] { return rng.uniform(0.1, 10.0); };

    if (regime == Regime::Generic) {
        MatD q = MatD::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) q(i, j) = sample_rate();
        return Generator<double>::validate(q);
    }

    if (regime == Regime::Equilibrium) {
        VecD pi = sample_pi();
        MatD q = MatD::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                q(i, j) = sample_rate();
                q(j, i) = pi(i) * q(i, j) / pi(j);
            }
        return Generator<double>::validate(q);
    }

    int shift = (regime == Regime::OneNE) ? 1 : k;
    const int max_attempts = 100;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        VecD pi = sample_pi();
        VecD ring(n);
        MatD chords = MatD::Zero(n, n);
        for (int i = 0; i < n; ++i) ring(i) = sample_rate();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) chords(i, j) = sample_rate();
        double feasible = pi(0) * ring(0);
        for (int i = 1; i <= n; ++i)
            feasible = std::min(feasible, pi(i - 1) * ring(i - 1));
        double d = 0.9 * feasible * rng.uniform01();
        if (d <= 0.0) continue;
        try {
            return detail::synth_k_shifted<double>(n, shift, pi, d, ring, chords);
        } catch (const Infeasible&) {
            continue;
        }
    }
    throw Infeasible("synthesis failed after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace noneq
