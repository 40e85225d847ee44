#pragma once

#include "noneq/chain.hpp"
#include "noneq/linalg.hpp"
#include "noneq/rng.hpp"

namespace noneq::testing {

// The hand-worked three-state ring: forward rates 2, backward rates 1,
// uniform stationary distribution, ring current 1/3.
template <class T>
Generator<T> cyclic3() {
    Mat<T> q(3, 3);
    q << T(-3), T(2), T(1),
         T(1), T(-3), T(2),
         T(2), T(1), T(-3);
    return Generator<T>::validate(q);
}

// Strict generator with independent off-diagonal rates in [0.1, 10].
inline Generator<double> random_strict(int n, std::uint64_t seed) {
    Rng rng(seed);
    MatD q = MatD::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) q(i, j) = rng.uniform(0.1, 10.0);
    return Generator<double>::validate(q);
}

}  // namespace noneq::testing
