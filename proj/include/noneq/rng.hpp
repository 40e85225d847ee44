#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace noneq {

// Seedable, reproducible generator. Stream splitting: stream(seed, index)
// feeds the 32-bit words of (seed, index) to a seed_seq, so distinct
// indices give independent, replayable streams for the same base seed.
// Variates are mapped from raw 64-bit draws here, not via std
// distributions, so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32)};
        engine_.seed(seq);
    }

    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32)};
        Rng r;
        r.engine_.seed(seq);
        return r;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Exponential via inversion; uniform01() < 1 keeps the log finite.
    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

private:
    Rng() = default;
    std::mt19937_64 engine_;
};

}  // namespace noneq
