#pragma once

#include <cstdint>
#include <random>

namespace telesim {

// Deterministic random source. We draw from mt19937_64 directly instead of
// going through std distributions, whose output is implementation-defined;
// a seed must reproduce the same stream on every toolchain.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Unbiased draw in [0, n). Rejection sampling over a power-of-two mask.
    uint64_t bounded(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t mask = ~uint64_t{0} >> __builtin_clzll((n - 1) | 1);
        uint64_t v;
        do {
            v = eng_() & mask;
        } while (v >= n);
        return v;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

} // namespace telesim
