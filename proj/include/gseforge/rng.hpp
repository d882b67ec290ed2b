#pragma once

#include <cstdint>
#include <random>

namespace gsef {

// Seeded RNG wrapper. All randomness in the pipeline flows through explicit
// instances of this so runs are reproducible from a single seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    bool coin() { return (eng_() >> 32) & 1u; }

    double uniform() {
        return (eng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
    }

    // Uniform integer in [0, bound).
    std::uint64_t integer(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
        return d(eng_);
    }

    double gaussian() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(eng_);
    }

    std::uint64_t raw() { return eng_(); }

    // splitmix64 finalizer; used to derive independent per-shard streams.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace gsef
