#pragma once

#include <cstdint>

namespace skelcut {

// SplitMix64 step: advances `state` and returns the next output.
inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Trial seed i derived from a master seed; equals the (i+1)-th output of a
/// SplitMix64 sequence started at `master`, computed without stepping.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t state = master + index * 0x9e3779b97f4a7c15ULL;
    return splitmix64_next(state);
}

/// xoshiro256** 1.0, seeded from a single 64-bit value through SplitMix64.
/// A fixed algorithm is used (instead of std:: distributions) so that seeded
/// streams are bit-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Unbiased integer in [0, bound); bound must be >= 1.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4];
};

}  // namespace skelcut
