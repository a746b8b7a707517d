/*
 * rng.hpp
 *
 * Deterministic, platform-independent random stream (splitmix64).
 * std::distributions are avoided on purpose: their output differs
 * between standard library implementations.
 */

#pragma once

#include <cstdint>

namespace snt {

class rng {
public:
    explicit rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // unbiased uniform draw from [0, bound)
    uint64_t next_below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

    double next_double() {  // [0, 1) with 53 random bits
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    // derive an independent deterministic stream
    static uint64_t mix(uint64_t seed, uint64_t salt) {
        rng r(seed ^ (0xD1B54A32D192ED03ULL * (salt + 1)));
        return r.next_u64();
    }

private:
    uint64_t state_;
};

}  // namespace snt
