#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "freqtrig/image.hpp"

namespace freqtrig {

/// Per-channel DCT coefficient planes of an image. Coefficient (u, v) sits
/// at row u, column v of each plane; the shape matches the source image.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(ColorSpace source_space, std::vector<Grid> planes);

    std::size_t width() const noexcept { return planes_.empty() ? 0 : planes_.front().cols(); }
    std::size_t height() const noexcept { return planes_.empty() ? 0 : planes_.front().rows(); }
    std::size_t channels() const noexcept { return planes_.size(); }
    ColorSpace color_space() const noexcept { return color_space_; }

    Grid& plane(std::size_t ch) { return planes_.at(ch); }
    const Grid& plane(std::size_t ch) const { return planes_.at(ch); }

    double at(std::size_t ch, std::size_t u, std::size_t v) const { return planes_[ch](u, v); }
    double& at(std::size_t ch, std::size_t u, std::size_t v) { return planes_[ch](u, v); }

    bool same_shape(const Spectrum& other) const noexcept;

private:
    ColorSpace color_space_ = ColorSpace::RGB;
    std::vector<Grid> planes_;
};

/// Orthonormal 2-D DCT-II over the whole plane:
///   F(u,v) = sum_i sum_j f(i,j) c(u) c(v) cos((i+1/2) pi u / M) cos((j+1/2) pi v / N)
/// with c(0) = sqrt(1/M), c(k>0) = sqrt(2/M) (likewise for N). Rows index u.
/// Computed as separable row and column passes. Throws InvalidInput on
/// empty or non-finite input.
Grid dct2(const Grid& plane);

/// Inverse of dct2 (orthonormal DCT-III).
Grid idct2(const Grid& coeffs);

/// Value of the (u, v) basis function at pixel (i, j) for an M x N plane.
double dct_basis(std::size_t i, std::size_t j, std::size_t u, std::size_t v,
                 std::size_t rows, std::size_t cols);

Spectrum image_to_spectrum(const Image& img);
Image spectrum_to_image(const Spectrum& spec);

/// image_to_spectrum over a batch, parallel per image, output in input order.
std::vector<Spectrum> to_spectra(std::span<const Image> images);

}  // namespace freqtrig
