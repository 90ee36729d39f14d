#pragma once

#include <cstdint>
#include <random>

#include "ppmkx/bits.hpp"

namespace ppmkx {

// splitmix64 output scrambler (Vigna's construction).
inline std::uint64_t splitmix64_scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Documented seed-mixing function: derive_seed(base, i) is the (i+1)-th
// output of a splitmix64 stream seeded with `base`, computed in O(1) as
//
//   scramble(base + (i + 1) * 0x9E3779B97F4A7C15)
//
// Used for per-trial seeds (i = run id) and for the per-trial sub-streams
// (i = 0 exchange, i = 1 attacker). Any reimplementation that follows this
// recipe reproduces the exact random streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64_scramble(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Deterministic random stream. All draws are hand-rolled on top of
// std::mt19937_64 so sequences do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    Bit bit() { return static_cast<Bit>(next_u64() >> 63); }

    // Unbiased uniform draw from [0, bound); Lemire's multiply-and-reject.
    std::uint32_t uniform_index(std::uint32_t bound) {
        const std::uint64_t b = bound;
        const std::uint64_t threshold = (0 - b) % b;
        for (;;) {
            const auto m =
                static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(b);
            if (static_cast<std::uint64_t>(m) >= threshold)
                return static_cast<std::uint32_t>(m >> 64);
        }
    }

    // 0 with probability p, else 1. p = 1 always yields 0, p = 0 always 1.
    Bit zero_with_probability(double p) { return uniform01() < p ? Bit{0} : Bit{1}; }

private:
    std::mt19937_64 engine_;
};

}  // namespace ppmkx
