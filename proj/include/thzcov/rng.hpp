#pragma once
#include <cmath>
#include <cstdint>

namespace thzcov {

// Counter-based random stream: the sequence is a pure function of
// (seed, trial, substream), so any trial can be regenerated in isolation
// and results do not depend on execution order or thread count.
namespace rng {

constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t key3(std::uint64_t seed, std::uint64_t trial, std::uint64_t substream) {
    std::uint64_t h = mix64(seed + GOLDEN);
    h = mix64(h ^ (trial + GOLDEN));
    h = mix64(h ^ (substream + GOLDEN));
    return h;
}

// Substream ids; one per independent source of randomness within a trial.
enum Substream : std::uint64_t {
    WALLS_X = 1,
    WALLS_Y = 2,
    HUMANS = 3,
    BEAM = 4,
    HUMAN_MARKS = 5,
    APS = 6,
};

class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t substream)
        : state_(key3(seed, trial, substream)) {}

    explicit Stream(std::uint64_t raw_state) : state_(raw_state) {}

    std::uint64_t next_u64() {
        state_ += GOLDEN;
        return mix64(state_);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Exact Poisson draw: unit-rate arrival process for small means,
    // transformed rejection (PTRS) for large ones, both exact.
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 30.0) {
            long k = 0;
            double t = 0.0;
            for (;;) {
                double u = next_double();
                if (u <= 0.0) u = 0x1.0p-53;
                t += -std::log(u);
                if (t > mean) return k;
                ++k;
            }
        }
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mean = std::log(mean);
        for (;;) {
            double u = next_double() - 0.5;
            double v = next_double();
            const double us = 0.5 - std::abs(u);
            const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<long>(kd);
            if (kd < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                kd * log_mean - mean - std::lgamma(kd + 1.0))
                return static_cast<long>(kd);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace rng
} // namespace thzcov
