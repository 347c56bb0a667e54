#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "freqtrig/image.hpp"
#include "freqtrig/transform.hpp"

namespace freqtrig {

struct Frequency {
    std::size_t u = 0;
    std::size_t v = 0;

    friend auto operator<=>(const Frequency&, const Frequency&) = default;
};

/// Deterministic tie-break order: by u+v, then u, then v.
bool tie_break_less(const Frequency& a, const Frequency& b) noexcept;

/// Guard added to |mean| and |F| in the CoV and filter-difference ratios.
inline constexpr double kRatioGuard = 1e-6;

/// Per (channel, u, v) aggregates over a dataset slice.
struct FrequencyStats {
    std::size_t channels = 0;
    std::size_t rows = 0;  // M
    std::size_t cols = 0;  // N
    std::size_t sample_count = 0;
    std::vector<Grid> mean;
    std::vector<Grid> std_dev;      // population
    std::vector<Grid> cov;          // std / (|mean| + guard)
    std::vector<Grid> filter_diff;  // mean over images of |F - F_filt| / (|F| + guard)
};

/// Reduction runs over images in input order, so results are bitwise
/// reproducible for a fixed order and agree to ~1e-12 under permutation.
/// Throws InvalidInput on length or shape mismatch or fewer than 2 spectra.
FrequencyStats compute_stats(std::span<const Spectrum> spectra,
                             std::span<const Spectrum> filtered_spectra);

/// All frequencies of channel `ch`, ascending by filter_diff.
std::vector<Frequency> rank_by_filter_diff(const FrequencyStats& stats, std::size_t ch);

/// `candidates`, descending by cov on channel `ch`.
std::vector<Frequency> rank_by_cov(const FrequencyStats& stats, std::size_t ch,
                                   std::span<const Frequency> candidates);

/// Picks `quota` frequencies that rank high in every list. The top window of
/// each list grows until at least `quota` frequencies are common to all
/// windows; those are ordered by summed rank (tie_break_less on ties) and the
/// first `quota` returned. Lists must be permutations of the same set.
std::vector<Frequency> common_top(std::span<const std::vector<Frequency>> rankings,
                                  std::size_t quota);

}  // namespace freqtrig
