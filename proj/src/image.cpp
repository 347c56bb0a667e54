#include "freqtrig/image.hpp"

#include <algorithm>
#include <cmath>

#include "freqtrig/error.hpp"

namespace freqtrig {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid_input";
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::Io: return "io";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

const char* to_string(ColorSpace cs) {
    return cs == ColorSpace::RGB ? "RGB" : "YUV";
}

Grid::Grid(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw InvalidInput("grid value count " + std::to_string(values_.size()) +
                           " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
}

bool Grid::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

Image::Image(std::size_t width, std::size_t height, std::size_t channels, ColorSpace cs, double fill)
    : width_(width), height_(height), color_space_(cs), planes_(channels, Grid(height, width, fill)) {}

Image::Image(ColorSpace cs, std::vector<Grid> planes) : color_space_(cs), planes_(std::move(planes)) {
    if (planes_.empty()) throw InvalidInput("image needs at least one plane");
    height_ = planes_.front().rows();
    width_ = planes_.front().cols();
    for (const auto& p : planes_) {
        if (p.rows() != height_ || p.cols() != width_) throw InvalidInput("image planes differ in shape");
    }
}

bool Image::same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels() == other.channels();
}

Image clamped(Image img) {
    for (auto& plane : img.planes()) {
        for (double& x : plane.values()) x = std::clamp(x, 0.0, 255.0);
    }
    return img;
}

Image quantized(Image img) {
    for (auto& plane : img.planes()) {
        for (double& x : plane.values()) x = std::round(std::clamp(x, 0.0, 255.0));
    }
    return img;
}

}  // namespace freqtrig
