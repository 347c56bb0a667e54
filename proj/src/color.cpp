#include "freqtrig/color.hpp"

#include <array>
#include <string>

#include "freqtrig/error.hpp"

namespace freqtrig {
namespace {

constexpr double kChromaOffset = 128.0;

void require(const Image& img, ColorSpace expected, const char* op) {
    if (img.color_space() != expected) {
        throw InvalidInput(std::string(op) + ": expected " + to_string(expected) + " image, got " +
                           to_string(img.color_space()));
    }
    if (img.channels() != 3) {
        throw InvalidInput(std::string(op) + ": expected 3 channels, got " +
                           std::to_string(img.channels()));
    }
}

}  // namespace

Image rgb_to_yuv(const Image& img) {
    require(img, ColorSpace::RGB, "rgb_to_yuv");
    Image out(img.width(), img.height(), 3, ColorSpace::YUV);
    const auto r = img.plane(0).values();
    const auto g = img.plane(1).values();
    const auto b = img.plane(2).values();
    auto y = out.plane(0).values();
    auto u = out.plane(1).values();
    auto v = out.plane(2).values();
    for (std::size_t k = 0; k < r.size(); ++k) {
        y[k] = 0.299 * r[k] + 0.587 * g[k] + 0.114 * b[k];
        u[k] = -0.168736 * r[k] - 0.331264 * g[k] + 0.5 * b[k] + kChromaOffset;
        v[k] = 0.5 * r[k] - 0.418688 * g[k] - 0.081312 * b[k] + kChromaOffset;
    }
    return out;
}

Image yuv_to_rgb(const Image& img) {
    require(img, ColorSpace::YUV, "yuv_to_rgb");
    // Inverse of the forward matrix above, solved in closed form so the
    // round trip is exact to rounding error.
    static const auto inv = [] {
        const double m[3][3] = {{0.299, 0.587, 0.114},
                                {-0.168736, -0.331264, 0.5},
                                {0.5, -0.418688, -0.081312}};
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        std::array<std::array<double, 3>, 3> r{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const int a = (j + 1) % 3, b = (j + 2) % 3, c = (i + 1) % 3, d = (i + 2) % 3;
                r[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
            }
        }
        return r;
    }();
    Image out(img.width(), img.height(), 3, ColorSpace::RGB);
    const auto y = img.plane(0).values();
    const auto u = img.plane(1).values();
    const auto v = img.plane(2).values();
    auto r = out.plane(0).values();
    auto g = out.plane(1).values();
    auto b = out.plane(2).values();
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double cy = y[k], cu = u[k] - kChromaOffset, cv = v[k] - kChromaOffset;
        r[k] = inv[0][0] * cy + inv[0][1] * cu + inv[0][2] * cv;
        g[k] = inv[1][0] * cy + inv[1][1] * cu + inv[1][2] * cv;
        b[k] = inv[2][0] * cy + inv[2][1] * cu + inv[2][2] * cv;
    }
    return out;
}

Grid luma(const Image& img) {
    if (img.color_space() == ColorSpace::YUV) return img.plane(0);
    if (img.channels() == 1) return img.plane(0);
    if (img.channels() != 3) throw InvalidInput("luma: expected 1 or 3 channels");
    Grid y(img.height(), img.width());
    const auto r = img.plane(0).values();
    const auto g = img.plane(1).values();
    const auto b = img.plane(2).values();
    auto out = y.values();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = 0.299 * r[k] + 0.587 * g[k] + 0.114 * b[k];
    return y;
}

}  // namespace freqtrig
