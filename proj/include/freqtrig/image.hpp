#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace freqtrig {

enum class ColorSpace { RGB, YUV };

const char* to_string(ColorSpace cs);

/// Dense row-major grid of doubles. Used both for pixel planes and for
/// DCT coefficient planes.
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, double fill = 0.0);
    Grid(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool all_finite() const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// W x H raster with one Grid (H rows, W columns) per channel, values on the
/// 0-255 scale. The color space tag follows the data through conversions.
class Image {
public:
    Image() = default;
    Image(std::size_t width, std::size_t height, std::size_t channels, ColorSpace cs,
          double fill = 0.0);
    Image(ColorSpace cs, std::vector<Grid> planes);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t channels() const noexcept { return planes_.size(); }
    ColorSpace color_space() const noexcept { return color_space_; }

    Grid& plane(std::size_t ch) { return planes_.at(ch); }
    const Grid& plane(std::size_t ch) const { return planes_.at(ch); }
    std::span<Grid> planes() noexcept { return planes_; }
    std::span<const Grid> planes() const noexcept { return planes_; }

    double& at(std::size_t ch, std::size_t row, std::size_t col) { return planes_[ch](row, col); }
    double at(std::size_t ch, std::size_t row, std::size_t col) const { return planes_[ch](row, col); }

    bool same_shape(const Image& other) const noexcept;

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    ColorSpace color_space_ = ColorSpace::RGB;
    std::vector<Grid> planes_;
};

/// Clamps every value into [0, 255] without rounding.
Image clamped(Image img);

/// Clamp then round half away from zero; the 8-bit storage view of an image.
Image quantized(Image img);

}  // namespace freqtrig
