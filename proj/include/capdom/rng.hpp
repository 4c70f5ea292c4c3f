#pragma once

#include <cstdint>
#include <random>

namespace capdom {

/// Deterministic RNG for generators. Never use std::uniform_int_distribution
/// here: its output is implementation-defined, and generated files must be
/// byte-identical for a given seed on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, n), n > 0, via rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi], inclusive.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Bernoulli with probability p (binary64 granularity, deterministic).
    bool chance(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        const std::uint64_t bits = eng_() >> 11; // 53 random bits
        return static_cast<double>(bits) < p * 9007199254740992.0; // p * 2^53
    }

private:
    std::mt19937_64 eng_;
};

} // namespace capdom
