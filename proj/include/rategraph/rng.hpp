#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace rategraph {

// splitmix64: a counter-style 64-bit generator (the state advances by a fixed
// odd constant and the output is a bijective mix of it). Trials get disjoint
// substreams by hashing (seed, trial) into the starting state, so results are
// a pure function of (seed, trial, draw index) and trivially parallel.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
        return SplitMix64(mix(seed + 0x9E3779B97F4A7C15ULL) ^ mix(trial + 0xD1B54A32D192ED03ULL));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform on (0, 1]; never zero, so -log(u) is finite.
    double next_unit() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Exponential with the given rate; +infinity for rate zero (the edge
    // never appears).
    double next_exponential(double rate) {
        const double u = next_unit();
        if (rate <= 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        return -std::log(u) / rate;
    }

private:
    std::uint64_t state_;
};

}  // namespace rategraph
