#include "freqtrig/trigger.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "freqtrig/color.hpp"
#include "freqtrig/error.hpp"
#include "freqtrig/parallel.hpp"

namespace freqtrig {

void FrequencyTrigger::validate() const {
    std::set<Frequency> seen;
    for (const auto& e : entries) {
        if (e.freq.u >= height || e.freq.v >= width) {
            throw InvalidInput("trigger frequency (" + std::to_string(e.freq.u) + "," +
                               std::to_string(e.freq.v) + ") outside " + std::to_string(height) + "x" +
                               std::to_string(width));
        }
        if (!seen.insert(e.freq).second) {
            throw InvalidInput("duplicate trigger frequency (" + std::to_string(e.freq.u) + "," +
                               std::to_string(e.freq.v) + ")");
        }
        if (e.intensity.size() != channels) throw InvalidInput("trigger intensity arity != channel count");
        for (double x : e.intensity) {
            if (!std::isfinite(x)) throw InvalidInput("non-finite trigger intensity");
        }
    }
}

void TriggerConfig::validate() const {
    if (top_n > candidate_pool) {
        throw InvalidArgument("top_n (" + std::to_string(top_n) + ") exceeds candidate pool (" +
                              std::to_string(candidate_pool) + ")");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be positive");
    if (delta.size() != 3) throw InvalidArgument("delta needs one value per channel (3)");
    for (double d : delta) {
        if (!std::isfinite(d)) throw InvalidArgument("delta must be finite");
    }
}

SliceSpectra slice_spectra(std::span<const Image> rgb_slice, const ImageFilter& filter) {
    SliceSpectra out;
    out.original.resize(rgb_slice.size());
    out.filtered.resize(rgb_slice.size());
    parallel_for(rgb_slice.size(), [&](std::size_t n) {
        out.original[n] = image_to_spectrum(rgb_to_yuv(rgb_slice[n]));
        out.filtered[n] = image_to_spectrum(rgb_to_yuv(filter(rgb_slice[n])));
    });
    return out;
}

std::vector<Frequency> select_robust_candidates(const FrequencyStats& stats, std::size_t pool) {
    if (pool > stats.rows * stats.cols) {
        throw InvalidArgument("candidate pool " + std::to_string(pool) + " exceeds the " +
                              std::to_string(stats.rows * stats.cols) + " available frequencies");
    }
    std::vector<std::vector<Frequency>> rankings;
    for (std::size_t ch = 0; ch < stats.channels; ++ch) rankings.push_back(rank_by_filter_diff(stats, ch));
    return common_top(rankings, pool);
}

std::vector<Frequency> select_discrete(const FrequencyStats& stats, std::span<const Frequency> candidates,
                                       std::size_t top_n) {
    if (top_n == 0) return {};
    if (candidates.size() < top_n) {
        throw InvalidInput("only " + std::to_string(candidates.size()) + " candidates for top_n " +
                           std::to_string(top_n));
    }
    std::vector<std::vector<Frequency>> rankings;
    for (std::size_t ch = 0; ch < stats.channels; ++ch) rankings.push_back(rank_by_cov(stats, ch, candidates));
    return common_top(rankings, top_n);
}

namespace {

ImageFilter filter_from(const FilterSpec& spec) {
    return [spec](const Image& img) { return apply_filter(img, spec); };
}

void require_slice(std::span<const Image> rgb_slice) {
    if (rgb_slice.size() < 2) throw InvalidInput("dataset slice needs at least 2 images");
}

FrequencyStats slice_stats(std::span<const Image> rgb_slice, const ImageFilter& filter) {
    const auto spectra = slice_spectra(rgb_slice, filter);
    return compute_stats(spectra.original, spectra.filtered);
}

}  // namespace

std::vector<Frequency> select_frequency_robust_to_filter(std::span<const Image> rgb_slice,
                                                         const TriggerConfig& cfg) {
    return select_frequency_robust_to_filter(rgb_slice, cfg, filter_from(cfg.filter));
}

std::vector<Frequency> select_frequency_robust_to_filter(std::span<const Image> rgb_slice,
                                                         const TriggerConfig& cfg,
                                                         const ImageFilter& filter) {
    require_slice(rgb_slice);
    cfg.validate();
    return select_robust_candidates(slice_stats(rgb_slice, filter), cfg.candidate_pool);
}

std::vector<Frequency> select_frequency_discrete(std::span<const Image> rgb_slice,
                                                 std::span<const Frequency> candidates,
                                                 const TriggerConfig& cfg) {
    require_slice(rgb_slice);
    if (candidates.empty()) throw InvalidInput("no candidate frequencies");
    // CoV ignores the filtered side, so skip filtering here.
    const auto stats = slice_stats(rgb_slice, [](const Image& img) { return img; });
    return select_discrete(stats, candidates, cfg.top_n);
}

GeneratedTrigger set_value(const FrequencyStats& stats, std::span<const Spectrum> spectra,
                           std::span<const Frequency> freqs, const TriggerConfig& cfg) {
    if (cfg.delta.size() != stats.channels) throw InvalidArgument("delta arity != channel count");
    GeneratedTrigger out;
    out.trigger.width = stats.cols;
    out.trigger.height = stats.rows;
    out.trigger.channels = stats.channels;
    out.trigger.epsilon = cfg.epsilon;
    for (const auto& f : freqs) {
        if (f.u >= stats.rows || f.v >= stats.cols) throw InvalidInput("frequency outside stats domain");
        TriggerEntry entry{f, {}};
        for (std::size_t ch = 0; ch < stats.channels; ++ch) {
            const double target = stats.mean[ch](f.u, f.v) + cfg.delta[ch];
            entry.intensity.push_back(target);
            if (spectra.empty()) continue;
            std::size_t exceed = 0;
            for (const auto& s : spectra) {
                if (std::abs(target - s.at(ch, f.u, f.v)) > cfg.epsilon) ++exceed;
            }
            const double fraction = static_cast<double>(exceed) / static_cast<double>(spectra.size());
            if (fraction > kStealthAuditFraction) out.warnings.push_back({ch, f, target, fraction});
        }
        out.trigger.entries.push_back(std::move(entry));
    }
    return out;
}

GeneratedTrigger generate_trigger(std::span<const Image> rgb_slice, const TriggerConfig& cfg) {
    return generate_trigger(rgb_slice, cfg, filter_from(cfg.filter));
}

GeneratedTrigger generate_trigger(std::span<const Image> rgb_slice, const TriggerConfig& cfg,
                                  const ImageFilter& filter) {
    require_slice(rgb_slice);
    cfg.validate();
    const auto spectra = slice_spectra(rgb_slice, filter);
    const auto stats = compute_stats(spectra.original, spectra.filtered);
    const auto candidates = select_robust_candidates(stats, cfg.candidate_pool);
    const auto chosen = select_discrete(stats, candidates, cfg.top_n);
    auto result = set_value(stats, spectra.original, chosen, cfg);
    auto& src = result.trigger.source;
    src.top_n = cfg.top_n;
    src.candidate_pool = cfg.candidate_pool;
    src.filter = cfg.filter.to_string();
    src.delta = cfg.delta;
    src.sample_count = rgb_slice.size();
    return result;
}

std::vector<Grid> render_spatial_trigger(const FrequencyTrigger& trigger, const Image& rgb) {
    if (rgb.width() != trigger.width || rgb.height() != trigger.height || rgb.channels() != trigger.channels) {
        throw InvalidInput("image shape does not match trigger shape");
    }
    const Spectrum spec = image_to_spectrum(rgb_to_yuv(rgb));
    std::vector<Grid> pattern;
    for (std::size_t ch = 0; ch < trigger.channels; ++ch) {
        Grid diff(trigger.height, trigger.width);
        for (const auto& e : trigger.entries) {
            diff(e.freq.u, e.freq.v) = e.intensity[ch] - spec.at(ch, e.freq.u, e.freq.v);
        }
        pattern.push_back(idct2(diff));
    }
    return pattern;
}

FrequencyTrigger reference_cifar10_trigger() {
    FrequencyTrigger t;
    t.width = 32;
    t.height = 32;
    t.channels = 3;
    t.entries = {
        {{1, 10}, {70.0, 70.0, 80.0}},
        {{1, 9}, {65.0, 65.0, 65.0}},
        {{0, 10}, {65.0, 65.0, 65.0}},
    };
    t.epsilon = 75.0;
    t.source.dataset = "cifar10";
    t.source.target_class = 1;
    t.source.top_n = 3;
    t.source.candidate_pool = 50;
    t.source.filter = FilterSpec{}.to_string();
    return t;
}

}  // namespace freqtrig
