#ifndef MTAEQ_RANDOM_HPP
#define MTAEQ_RANDOM_HPP

#include <cstdint>
#include <random>

namespace mtaeq {

// Purposes of derived random streams; a stream is fixed by (seed, tag, index).
enum class stream_tag : std::uint32_t {
    generator = 1,
    valuation = 2,
    prime = 3,
    weights = 4,
    fixtures = 5,
};

using Rng = std::mt19937_64;

/// splitmix64 finaliser over (seed, index); used to derive sub-seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline Rng make_stream(std::uint64_t seed, stream_tag tag, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

}  // namespace mtaeq

#endif  // MTAEQ_RANDOM_HPP
