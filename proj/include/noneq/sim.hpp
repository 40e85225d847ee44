#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noneq/chain.hpp"
#include "noneq/errors.hpp"
#include "noneq/linalg.hpp"
#include "noneq/rng.hpp"

namespace noneq {

// One sampled path: visited states (1-based) with matching sojourn times.
// The final sojourn is clipped at the horizon, so total_time equals the sum
// of holding times exactly.
struct Trajectory {
    std::vector<int> states;
    std::vector<double> holding_times;
    double total_time = 0.0;
};

// Standard continuous-time sampling: sojourn in state i is exponential with
// rate -q_ii, the next state is drawn proportionally to the off-diagonal
// rates. Deterministic in (generator, start, horizon, seed, stream); batch
// runs pass distinct stream indices over one base seed.
inline Trajectory simulate(const Generator<double>& g, int start, double horizon,
                           std::uint64_t seed, std::uint64_t stream = 0) {
    if (!(horizon > 0.0)) throw BadHorizon(horizon);
    const int n = g.size();
    if (start < 1 || start > n) throw BadIndex(start, n);

    Rng rng = Rng::stream(seed, stream);
    Trajectory t;
    double now = 0.0;
    int state = start;
    while (now < horizon) {
        double exit_rate = -g.matrix()(state - 1, state - 1);
        double dwell = rng.exponential(exit_rate);
        if (now + dwell >= horizon) {
            double clipped = horizon - now;
            if (clipped > 0.0) {
                t.states.push_back(state);
                t.holding_times.push_back(clipped);
            }
            now = horizon;
            break;
        }
        t.states.push_back(state);
        t.holding_times.push_back(dwell);
        now += dwell;

        double u = rng.uniform01() * exit_rate;
        double acc = 0.0;
        int next = state == 1 ? 2 : 1;
        for (int j = 1; j <= n; ++j) {
            if (j == state) continue;
            acc += g.matrix()(state - 1, j - 1);
            if (u < acc) {
                next = j;
                break;
            }
        }
        state = next;
    }
    t.total_time = 0.0;
    for (double h : t.holding_times) t.total_time += h;
    return t;
}

// Empirical net fluxes with Poisson-approximation standard errors.
struct CurrentEstimate {
    MatD j_hat;    // antisymmetric by construction
    MatD stderr_;  // sqrt(n_ij + n_ji) / T, symmetric
    double total_time = 0.0;
};

inline CurrentEstimate empirical_currents(const Trajectory& t, int n) {
    if (t.states.empty()) throw EmptyTrajectory();
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(n, n);
    for (std::size_t s = 0; s + 1 < t.states.size(); ++s)
        counts(t.states[s] - 1, t.states[s + 1] - 1) += 1;

    CurrentEstimate est;
    est.total_time = t.total_time;
    est.j_hat = MatD::Zero(n, n);
    est.stderr_ = MatD::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double net = (counts(i, j) - counts(j, i)) / t.total_time;
            est.j_hat(i, j) = net;
            est.j_hat(j, i) = -net;
            double se = std::sqrt(static_cast<double>(counts(i, j) + counts(j, i))) / t.total_time;
            est.stderr_(i, j) = se;
            est.stderr_(j, i) = se;
        }
    return est;
}

// Time-weighted occupation fractions. An optional burn-in drops the leading
// time units before averaging.
inline Distribution<double> empirical_occupation(const Trajectory& t, int n,
                                                 double burn_in = 0.0) {
    if (t.states.empty()) throw EmptyTrajectory();
    VecD occ = VecD::Zero(n);
    double skipped = 0.0, counted = 0.0;
    for (std::size_t s = 0; s < t.states.size(); ++s) {
        double h = t.holding_times[s];
        if (skipped < burn_in) {
            double drop = std::min(h, burn_in - skipped);
            skipped += drop;
            h -= drop;
        }
        if (h > 0.0) {
            occ(t.states[s] - 1) += h;
            counted += h;
        }
    }
    if (counted <= 0.0) throw EmptyTrajectory();
    occ /= counted;
    // Pin the sum to one bit-exactly.
    double gap = 1.0 - occ.sum();
    int top = 0;
    occ.maxCoeff(&top);
    occ(top) += gap;
    return Distribution<double>::empirical(std::move(occ));
}

}  // namespace noneq
