#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "freqtrig/image.hpp"

namespace freqtrig {

/// 10 log10(255^2 / MSE) with the MSE taken jointly over all channels and
/// pixels. +infinity when the images are identical.
double psnr(const Image& a, const Image& b);

/// Mean SSIM on the luma channel: 11x11 Gaussian window (sigma 1.5, shrunk to
/// fit images smaller than 11), valid positions only, K1 = 0.01, K2 = 0.03,
/// L = 255.
double ssim(const Image& a, const Image& b);

struct QualityRow {
    std::size_t index = 0;
    double psnr = 0.0;
    double ssim = 0.0;
};

struct QualityReport {
    std::vector<QualityRow> rows;
    double mean_psnr = 0.0;
    double min_psnr = 0.0;
    double mean_ssim = 0.0;
    double min_ssim = 0.0;
};

/// Pairwise metrics over aligned images. `indices`, when given, labels the
/// rows (it must have the same length); otherwise rows are numbered 0..n-1.
QualityReport batch_quality(std::span<const Image> clean, std::span<const Image> poisoned,
                            std::span<const std::size_t> indices = {});

}  // namespace freqtrig
