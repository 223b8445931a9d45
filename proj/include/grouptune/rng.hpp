#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace grouptune {

// Deterministic random source. Every draw the search makes goes through
// uniform01()/uniform_index() so that a seed fixes the whole trajectory on
// any platform: mt19937_64's raw output sequence is pinned by the standard,
// whereas std::uniform_*_distribution is implementation-defined and must not
// be used here. Virtual so tests can substitute scripted draw sequences.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}
    virtual ~Rng() = default;

    std::uint64_t seed() const { return seed_; }

    // 53-bit uniform double in [0, 1).
    virtual double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). n <= 1 short-circuits without consuming
    // state; this makes group-wise mutation over a one-group table
    // trace-identical to global mutation.
    virtual std::size_t uniform_index(std::size_t n) {
        if (n <= 1) return 0;
        const std::uint64_t range = n;
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() / range * range;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % range);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace grouptune
