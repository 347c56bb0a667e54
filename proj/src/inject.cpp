#include "freqtrig/inject.hpp"

#include <algorithm>
#include <cmath>

#include "freqtrig/color.hpp"
#include "freqtrig/error.hpp"
#include "freqtrig/parallel.hpp"
#include "freqtrig/random.hpp"
#include "freqtrig/transform.hpp"

namespace freqtrig {
namespace {

void require_match(const Image& img, const FrequencyTrigger& trigger) {
    if (img.width() != trigger.width || img.height() != trigger.height || img.channels() != trigger.channels) {
        throw InvalidInput("image is " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                           "x" + std::to_string(img.channels()) + ", trigger expects " +
                           std::to_string(trigger.width) + "x" + std::to_string(trigger.height) + "x" +
                           std::to_string(trigger.channels));
    }
}

}  // namespace

Image inject_trigger_raw(const Image& rgb, const FrequencyTrigger& trigger) {
    if (rgb.color_space() != ColorSpace::RGB) throw InvalidInput("inject_trigger expects an RGB image");
    if (trigger.empty()) return rgb;
    require_match(rgb, trigger);
    Spectrum spec = image_to_spectrum(rgb_to_yuv(rgb));
    for (const auto& e : trigger.entries) {
        for (std::size_t ch = 0; ch < trigger.channels; ++ch) spec.at(ch, e.freq.u, e.freq.v) = e.intensity[ch];
    }
    return yuv_to_rgb(spectrum_to_image(spec));
}

Image inject_trigger(const Image& rgb, const FrequencyTrigger& trigger) {
    if (trigger.empty()) return rgb;
    return clamped(inject_trigger_raw(rgb, trigger));
}

VerifyReport verify_injection(const Image& poisoned, const FrequencyTrigger& trigger, double threshold) {
    VerifyReport report;
    if (trigger.empty()) return report;
    require_match(poisoned, trigger);
    const Spectrum spec = image_to_spectrum(rgb_to_yuv(poisoned));
    for (const auto& e : trigger.entries) {
        for (std::size_t ch = 0; ch < trigger.channels; ++ch) {
            const double measured = spec.at(ch, e.freq.u, e.freq.v);
            const double dev = std::abs(measured - e.intensity[ch]);
            const bool flagged = dev > threshold;
            report.entries.push_back({e.freq, ch, measured, dev, flagged});
            report.max_deviation = std::max(report.max_deviation, dev);
            report.any_flagged = report.any_flagged || flagged;
        }
    }
    return report;
}

PoisonResult poison_dataset(const Dataset& ds, int target_class, double rate, const FrequencyTrigger& trigger,
                            std::uint64_t seed) {
    ds.validate();
    if (target_class < 0 || static_cast<std::size_t>(target_class) >= ds.class_count()) {
        throw InvalidArgument("unknown target class " + std::to_string(target_class));
    }
    if (!(rate >= 0.0 && rate <= 1.0)) throw InvalidArgument("poison rate must lie in [0, 1]");
    trigger.validate();

    const auto members = ds.indices_of(target_class);
    const auto count = static_cast<std::size_t>(std::floor(rate * static_cast<double>(members.size())));
    const auto picks = seeded_sample(members.size(), count, seed);

    PoisonResult result{ds, {}};
    auto& m = result.manifest;
    m.target_class = target_class;
    m.rate = rate;
    m.seed = seed;
    m.trigger = trigger;
    m.poisoned_indices.reserve(picks.size());
    for (std::size_t p : picks) m.poisoned_indices.push_back(members[p]);

    std::vector<Image> clean(m.poisoned_indices.size()), dirty(m.poisoned_indices.size());
    std::vector<double> deviation(m.poisoned_indices.size(), 0.0);
    parallel_for(m.poisoned_indices.size(), [&](std::size_t k) {
        const std::size_t idx = m.poisoned_indices[k];
        clean[k] = ds.images[idx];
        // The dataset is headed for 8-bit storage, so quantize here and
        // measure quality on exactly what gets written.
        dirty[k] = quantized(inject_trigger(clean[k], trigger));
        deviation[k] = verify_injection(dirty[k], trigger).max_deviation;
    });
    for (std::size_t k = 0; k < dirty.size(); ++k) {
        result.dataset.images[m.poisoned_indices[k]] = dirty[k];
        m.max_deviation = std::max(m.max_deviation, deviation[k]);
    }
    m.quality = batch_quality(clean, dirty, m.poisoned_indices);
    return result;
}

}  // namespace freqtrig
