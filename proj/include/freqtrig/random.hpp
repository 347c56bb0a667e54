#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace freqtrig {

// std::shuffle and the std distributions are implementation-defined, so
// anything that must reproduce across toolchains goes through these.

/// Uniform integer in [0, bound) from a 64-bit Mersenne Twister, by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Seeded Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

/// `k` distinct indices drawn uniformly from 0..n-1, returned sorted.
std::vector<std::size_t> seeded_sample(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace freqtrig
