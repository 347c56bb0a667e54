#include "freqtrig/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freqtrig/color.hpp"
#include "freqtrig/error.hpp"
#include "freqtrig/filters.hpp"
#include "freqtrig/parallel.hpp"

namespace freqtrig {
namespace {

constexpr double kPeak = 255.0;
constexpr std::size_t kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kC1 = (0.01 * kPeak) * (0.01 * kPeak);
constexpr double kC2 = (0.03 * kPeak) * (0.03 * kPeak);

void require_comparable(const Image& a, const Image& b, const char* op) {
    if (!a.same_shape(b)) throw InvalidInput(std::string(op) + ": images differ in shape");
    if (a.color_space() != b.color_space()) throw InvalidInput(std::string(op) + ": images differ in color space");
}

}  // namespace

double psnr(const Image& a, const Image& b) {
    require_comparable(a, b, "psnr");
    double sse = 0.0;
    std::size_t count = 0;
    for (std::size_t ch = 0; ch < a.channels(); ++ch) {
        const auto pa = a.plane(ch).values();
        const auto pb = b.plane(ch).values();
        for (std::size_t k = 0; k < pa.size(); ++k) {
            const double d = pa[k] - pb[k];
            sse += d * d;
        }
        count += pa.size();
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeak * kPeak / (sse / static_cast<double>(count)));
}

double ssim(const Image& a, const Image& b) {
    require_comparable(a, b, "ssim");
    const Grid x = luma(a);
    const Grid y = luma(b);
    const std::size_t rows = x.rows(), cols = x.cols();

    std::size_t win = std::min({kSsimWindow, rows, cols});
    if (win % 2 == 0) --win;
    const Grid w = gaussian_kernel(win, kSsimSigma);

    double total = 0.0;
    std::size_t windows = 0;
    for (std::size_t r0 = 0; r0 + win <= rows; ++r0) {
        for (std::size_t c0 = 0; c0 + win <= cols; ++c0) {
            double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
            for (std::size_t i = 0; i < win; ++i) {
                for (std::size_t j = 0; j < win; ++j) {
                    const double wk = w(i, j), xv = x(r0 + i, c0 + j), yv = y(r0 + i, c0 + j);
                    mx += wk * xv;
                    my += wk * yv;
                    sxx += wk * xv * xv;
                    syy += wk * yv * yv;
                    sxy += wk * xv * yv;
                }
            }
            const double vx = sxx - mx * mx, vy = syy - my * my, cxy = sxy - mx * my;
            total += ((2 * mx * my + kC1) * (2 * cxy + kC2)) /
                     ((mx * mx + my * my + kC1) * (vx + vy + kC2));
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

QualityReport batch_quality(std::span<const Image> clean, std::span<const Image> poisoned,
                            std::span<const std::size_t> indices) {
    if (clean.size() != poisoned.size()) throw InvalidInput("batch_quality: slices differ in length");
    if (!indices.empty() && indices.size() != clean.size()) {
        throw InvalidInput("batch_quality: index list length mismatch");
    }
    QualityReport report;
    report.rows.resize(clean.size());
    parallel_for(clean.size(), [&](std::size_t i) {
        report.rows[i] = {indices.empty() ? i : indices[i], psnr(clean[i], poisoned[i]),
                          ssim(clean[i], poisoned[i])};
    });
    if (report.rows.empty()) return report;

    report.min_psnr = std::numeric_limits<double>::infinity();
    report.min_ssim = std::numeric_limits<double>::infinity();
    double psnr_sum = 0.0, ssim_sum = 0.0;
    for (const auto& row : report.rows) {
        psnr_sum += row.psnr;
        ssim_sum += row.ssim;
        report.min_psnr = std::min(report.min_psnr, row.psnr);
        report.min_ssim = std::min(report.min_ssim, row.ssim);
    }
    const double n = static_cast<double>(report.rows.size());
    report.mean_psnr = psnr_sum / n;
    report.mean_ssim = ssim_sum / n;
    return report;
}

}  // namespace freqtrig
