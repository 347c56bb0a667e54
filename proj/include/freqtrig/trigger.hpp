#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "freqtrig/filters.hpp"
#include "freqtrig/image.hpp"
#include "freqtrig/stats.hpp"
#include "freqtrig/transform.hpp"

namespace freqtrig {

struct TriggerEntry {
    Frequency freq;
    std::vector<double> intensity;  // target coefficient per YUV channel

    friend bool operator==(const TriggerEntry&, const TriggerEntry&) = default;
};

/// Where a trigger came from. Enough to replay generation.
struct TriggerSource {
    std::string dataset;
    int target_class = -1;
    std::size_t top_n = 0;
    std::size_t candidate_pool = 0;
    std::string filter;
    std::vector<double> delta;
    std::size_t sample_count = 0;

    friend bool operator==(const TriggerSource&, const TriggerSource&) = default;
};

/// A set of DCT coefficients (in YUV) forced to fixed target intensities.
struct FrequencyTrigger {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 3;
    std::vector<TriggerEntry> entries;
    double epsilon = 75.0;
    TriggerSource source;

    bool empty() const noexcept { return entries.empty(); }

    /// Throws InvalidInput on duplicate or out-of-range frequencies,
    /// wrong intensity arity, or non-finite intensities.
    void validate() const;

    friend bool operator==(const FrequencyTrigger&, const FrequencyTrigger&) = default;
};

struct TriggerConfig {
    std::size_t top_n = 3;
    std::size_t candidate_pool = 50;
    double epsilon = 75.0;
    std::vector<double> delta = {10.0, 10.0, 10.0};
    FilterSpec filter;  // gaussian 3x3, sigma 1

    void validate() const;
};

/// Stealth audit record: target intensity differs from more than 5% of the
/// slice's coefficients by more than epsilon.
struct StealthWarning {
    std::size_t channel = 0;
    Frequency freq;
    double intensity = 0.0;
    double exceed_fraction = 0.0;
};

inline constexpr double kStealthAuditFraction = 0.05;

struct GeneratedTrigger {
    FrequencyTrigger trigger;
    std::vector<StealthWarning> warnings;
};

using ImageFilter = std::function<Image(const Image&)>;

/// YUV spectra of a slice and of its filtered counterpart. Filtering runs on
/// the RGB images, before color conversion.
struct SliceSpectra {
    std::vector<Spectrum> original;
    std::vector<Spectrum> filtered;
};

SliceSpectra slice_spectra(std::span<const Image> rgb_slice, const ImageFilter& filter);

/// The `pool` frequencies most robust to filtering across all channels.
std::vector<Frequency> select_robust_candidates(const FrequencyStats& stats, std::size_t pool);

/// The `top_n` candidates with the highest CoV across all channels.
std::vector<Frequency> select_discrete(const FrequencyStats& stats,
                                       std::span<const Frequency> candidates, std::size_t top_n);

/// Image-level wrappers. The filter defaults to cfg.filter.
std::vector<Frequency> select_frequency_robust_to_filter(std::span<const Image> rgb_slice,
                                                         const TriggerConfig& cfg);
std::vector<Frequency> select_frequency_robust_to_filter(std::span<const Image> rgb_slice,
                                                         const TriggerConfig& cfg,
                                                         const ImageFilter& filter);
std::vector<Frequency> select_frequency_discrete(std::span<const Image> rgb_slice,
                                                 std::span<const Frequency> candidates,
                                                 const TriggerConfig& cfg);

/// I_T = mean + delta per channel; audits the stealth threshold against the
/// slice spectra but never alters I_T.
GeneratedTrigger set_value(const FrequencyStats& stats, std::span<const Spectrum> spectra,
                           std::span<const Frequency> freqs, const TriggerConfig& cfg);

/// Filter screening, CoV selection, then set_value. Deterministic for a given
/// slice order and config. source.dataset and source.target_class are left
/// for the caller.
GeneratedTrigger generate_trigger(std::span<const Image> rgb_slice, const TriggerConfig& cfg);
GeneratedTrigger generate_trigger(std::span<const Image> rgb_slice, const TriggerConfig& cfg,
                                  const ImageFilter& filter);

/// Additive YUV perturbation the trigger causes on `rgb`: the inverse DCT of
/// the sparse spectrum holding I_T - F at each trigger frequency.
std::vector<Grid> render_spatial_trigger(const FrequencyTrigger& trigger, const Image& rgb);

/// The trigger published for CIFAR-10's automobile class.
FrequencyTrigger reference_cifar10_trigger();

}  // namespace freqtrig
