#pragma once

#include <cstddef>
#include <string>

#include "freqtrig/image.hpp"

namespace freqtrig {

// Spatial filters work per channel with half-sample symmetric ("reflect")
// padding: ...c b a | a b c ... | c b a...

/// Normalized kernel_size x kernel_size Gaussian weights.
Grid gaussian_kernel(std::size_t kernel_size, double sigma);

Image gaussian_filter(const Image& img, std::size_t kernel_size, double sigma);
Image mean_filter(const Image& img, std::size_t kernel_size);
Image median_filter(const Image& img, std::size_t kernel_size);

/// Per channel: DCT, keep the `rank` largest singular values of the
/// coefficient matrix, inverse DCT.
Image svd_filter(const Image& img, std::size_t rank);

/// Default SVD rank for an image: ceil(min(W, H) / 4).
std::size_t default_svd_rank(const Image& img);

enum class FilterType { Gaussian, Mean, Median, Svd };

/// A filter plus its parameters, in the textual form
/// "gaussian:K:SIGMA", "mean:K", "median:K" or "svd:RANK" ("svd" alone uses
/// default_svd_rank).
struct FilterSpec {
    FilterType type = FilterType::Gaussian;
    std::size_t kernel_size = 3;
    double sigma = 1.0;
    std::size_t rank = 0;  // 0: default_svd_rank

    static FilterSpec parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

Image apply_filter(const Image& img, const FilterSpec& spec);

}  // namespace freqtrig
