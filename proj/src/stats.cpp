#include "freqtrig/stats.hpp"

#include <algorithm>
#include <cmath>

#include "freqtrig/error.hpp"

namespace freqtrig {
namespace {

std::vector<Frequency> sort_by_score(const Grid& scores, std::vector<Frequency> freqs, bool ascending) {
    std::stable_sort(freqs.begin(), freqs.end(), [&](const Frequency& a, const Frequency& b) {
        const double sa = scores(a.u, a.v), sb = scores(b.u, b.v);
        if (sa != sb) return ascending ? sa < sb : sa > sb;
        return tie_break_less(a, b);
    });
    return freqs;
}

}  // namespace

bool tie_break_less(const Frequency& a, const Frequency& b) noexcept {
    if (a.u + a.v != b.u + b.v) return a.u + a.v < b.u + b.v;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

FrequencyStats compute_stats(std::span<const Spectrum> spectra, std::span<const Spectrum> filtered_spectra) {
    if (spectra.size() != filtered_spectra.size()) {
        throw InvalidInput("compute_stats: " + std::to_string(spectra.size()) + " spectra but " +
                           std::to_string(filtered_spectra.size()) + " filtered spectra");
    }
    if (spectra.size() < 2) throw InvalidInput("compute_stats: need at least 2 spectra");
    const Spectrum& first = spectra.front();
    for (std::size_t n = 0; n < spectra.size(); ++n) {
        if (!spectra[n].same_shape(first) || !filtered_spectra[n].same_shape(first)) {
            throw InvalidInput("compute_stats: spectrum " + std::to_string(n) + " differs in shape");
        }
    }

    FrequencyStats s;
    s.channels = first.channels();
    s.rows = first.height();
    s.cols = first.width();
    s.sample_count = spectra.size();
    const double count = static_cast<double>(s.sample_count);
    const std::size_t cells = s.rows * s.cols;

    for (std::size_t ch = 0; ch < s.channels; ++ch) {
        // Accumulate deviations from the first sample: identical inputs then
        // give exactly zero spread, and large DC offsets do not cancel.
        const auto ref = spectra.front().plane(ch).values();
        std::vector<double> shift(cells, 0.0), diff(cells, 0.0);
        for (std::size_t n = 0; n < spectra.size(); ++n) {
            const auto f = spectra[n].plane(ch).values();
            const auto g = filtered_spectra[n].plane(ch).values();
            for (std::size_t k = 0; k < cells; ++k) {
                shift[k] += f[k] - ref[k];
                diff[k] += std::abs(f[k] - g[k]) / (std::abs(f[k]) + kRatioGuard);
            }
        }
        for (double& x : shift) x /= count;
        std::vector<double> sq(cells, 0.0);
        for (std::size_t n = 0; n < spectra.size(); ++n) {
            const auto f = spectra[n].plane(ch).values();
            for (std::size_t k = 0; k < cells; ++k) {
                const double d = (f[k] - ref[k]) - shift[k];
                sq[k] += d * d;
            }
        }
        Grid mean(s.rows, s.cols), sd(s.rows, s.cols), cov(s.rows, s.cols), fdiff(s.rows, s.cols);
        for (std::size_t k = 0; k < cells; ++k) {
            mean.values()[k] = ref[k] + shift[k];
            sd.values()[k] = std::sqrt(sq[k] / count);
            cov.values()[k] = sd.values()[k] / (std::abs(mean.values()[k]) + kRatioGuard);
            fdiff.values()[k] = diff[k] / count;
        }
        s.mean.push_back(std::move(mean));
        s.std_dev.push_back(std::move(sd));
        s.cov.push_back(std::move(cov));
        s.filter_diff.push_back(std::move(fdiff));
    }
    return s;
}

std::vector<Frequency> rank_by_filter_diff(const FrequencyStats& stats, std::size_t ch) {
    if (ch >= stats.channels) throw InvalidArgument("channel out of range");
    std::vector<Frequency> all;
    all.reserve(stats.rows * stats.cols);
    for (std::size_t u = 0; u < stats.rows; ++u)
        for (std::size_t v = 0; v < stats.cols; ++v) all.push_back({u, v});
    return sort_by_score(stats.filter_diff[ch], std::move(all), true);
}

std::vector<Frequency> rank_by_cov(const FrequencyStats& stats, std::size_t ch,
                                   std::span<const Frequency> candidates) {
    if (ch >= stats.channels) throw InvalidArgument("channel out of range");
    for (const auto& f : candidates) {
        if (f.u >= stats.rows || f.v >= stats.cols) throw InvalidInput("candidate frequency out of range");
    }
    return sort_by_score(stats.cov[ch], {candidates.begin(), candidates.end()}, false);
}

std::vector<Frequency> common_top(std::span<const std::vector<Frequency>> rankings, std::size_t quota) {
    if (rankings.empty()) throw InvalidInput("common_top: no rankings");
    const std::size_t total = rankings.front().size();
    for (const auto& r : rankings) {
        if (r.size() != total) throw InvalidInput("common_top: rankings differ in length");
    }
    if (quota > total) {
        throw InvalidInput("common_top: quota " + std::to_string(quota) + " exceeds the " +
                           std::to_string(total) + " ranked frequencies");
    }
    if (quota == 0) return {};

    std::size_t max_u = 0, max_v = 0;
    for (const auto& f : rankings.front()) {
        max_u = std::max(max_u, f.u);
        max_v = std::max(max_v, f.v);
    }
    const std::size_t stride = max_v + 1;
    auto slot = [&](const Frequency& f) { return f.u * stride + f.v; };

    std::vector<std::size_t> seen((max_u + 1) * stride, 0);
    std::vector<std::size_t> rank_sum((max_u + 1) * stride, 0);
    std::vector<Frequency> common;

    // Grow every window by one position per step; a frequency becomes common
    // once it has appeared in all of them.
    std::size_t window = 0;
    while (window < total && (common.size() < quota || window < quota)) {
        for (const auto& ranking : rankings) {
            const Frequency& f = ranking[window];
            const std::size_t k = slot(f);
            rank_sum[k] += window;
            if (++seen[k] == rankings.size()) common.push_back(f);
        }
        ++window;
    }
    if (common.size() < quota) throw InvalidInput("common_top: rankings are not permutations of one set");

    std::stable_sort(common.begin(), common.end(), [&](const Frequency& a, const Frequency& b) {
        const std::size_t ra = rank_sum[slot(a)], rb = rank_sum[slot(b)];
        if (ra != rb) return ra < rb;
        return tie_break_less(a, b);
    });
    common.resize(quota);
    return common;
}

}  // namespace freqtrig
