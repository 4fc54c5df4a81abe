#pragma once

#include <cmath>
#include <cstdint>

#include "cuav/units.hpp"

namespace cuav {

/// SplitMix64 generator. The seed-to-stream mapping below is part of the
/// reproducibility contract: identical seeds give identical streams on
/// every run of the same build, independent of evaluation order.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in the open interval (0, 1).
    double next_uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
};

/// Substream for trial `index` under a run seed: two extra mixing rounds
/// of the xored pair, so substreams are decorrelated and order-free.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    std::uint64_t s = mixer.next();
    s ^= mixer.next() << 1;
    return SplitMix64(s);
}

/// Standard normal deviates via Box-Muller on SplitMix64 uniforms.
struct GaussianStream {
    SplitMix64 rng;
    bool has_spare = false;
    double spare = 0.0;

    explicit GaussianStream(SplitMix64 r) : rng(r) {}

    double next() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        const double u1 = rng.next_uniform();
        const double u2 = rng.next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare = r * std::sin(angle);
        has_spare = true;
        return r * std::cos(angle);
    }
};

} // namespace cuav
