#include "freqtrig/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "freqtrig/error.hpp"

namespace freqtrig {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("uniform_below: bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

std::vector<std::size_t> seeded_sample(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n) throw InvalidArgument("seeded_sample: k exceeds n");
    auto perm = seeded_permutation(n, seed);
    perm.resize(k);
    std::sort(perm.begin(), perm.end());
    return perm;
}

}  // namespace freqtrig
