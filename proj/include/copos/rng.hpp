#pragma once

// Seeded random source for the instance generators. Draws go through
// mt19937_64 with explicit rejection sampling so a seed produces the same
// matrices on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "scalar.hpp"

namespace copos {

/// splitmix64 finalizer; derives independent sub-seeds from (seed, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class seeded_rng {
public:
    explicit seeded_rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return lo + static_cast<long>(r % span);
    }

    /// num/den with num uniform in [num_lo, num_hi] and den uniform in [1, den_hi].
    rational fraction(long num_lo, long num_hi, long den_hi) {
        const long num = uniform(num_lo, num_hi);
        const long den = uniform(1, den_hi);
        rational r(num, den);
        r.canonicalize();
        return r;
    }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform(0, static_cast<long>(i) - 1));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace copos
