#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "freqtrig/dataset.hpp"
#include "freqtrig/image.hpp"
#include "freqtrig/quality.hpp"
#include "freqtrig/trigger.hpp"

namespace freqtrig {

/// RGB -> YUV -> DCT, replace the coefficient at every trigger frequency by
/// its target intensity, IDCT -> RGB. Neither clamped nor rounded.
Image inject_trigger_raw(const Image& rgb, const FrequencyTrigger& trigger);

/// inject_trigger_raw clamped to [0, 255]. Rounding is left to write-out.
Image inject_trigger(const Image& rgb, const FrequencyTrigger& trigger);

inline constexpr double kDefaultVerifyThreshold = 3.0;

struct EntryDeviation {
    Frequency freq;
    std::size_t channel = 0;
    double measured = 0.0;
    double deviation = 0.0;
    bool flagged = false;
};

struct VerifyReport {
    std::vector<EntryDeviation> entries;
    double max_deviation = 0.0;
    bool any_flagged = false;
};

/// Re-measures the spectrum of a poisoned RGB image at the trigger
/// frequencies and compares it with I_T.
VerifyReport verify_injection(const Image& poisoned, const FrequencyTrigger& trigger,
                              double threshold = kDefaultVerifyThreshold);

struct PoisonManifest {
    int target_class = 0;
    double rate = 1.0;
    std::uint64_t seed = 0;
    FrequencyTrigger trigger;
    std::vector<std::size_t> poisoned_indices;
    QualityReport quality;
    double max_deviation = 0.0;
};

struct PoisonResult {
    Dataset dataset;
    PoisonManifest manifest;
};

/// Clean-label poisoning: floor(rate * |class|) images of `target_class`,
/// drawn with `seed`, are replaced by their quantized injected version.
/// Labels and every other image stay untouched.
PoisonResult poison_dataset(const Dataset& ds, int target_class, double rate,
                            const FrequencyTrigger& trigger, std::uint64_t seed);

}  // namespace freqtrig
