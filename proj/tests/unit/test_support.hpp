#pragma once

// Shared generators and independent oracles for the unit and acceptance tests.
// The oracles here deliberately avoid the library code paths they check.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <numbers>
#include <random>
#include <vector>

#include "freqtrig/dataset.hpp"
#include "freqtrig/image.hpp"

namespace freqtrig::testing {

inline Grid random_grid(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = 0.0,
                        double hi = 255.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Grid g(rows, cols);
    for (double& x : g.values()) x = dist(rng);
    return g;
}

inline Image random_image(std::size_t width, std::size_t height, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 255.0) {
    std::vector<Grid> planes;
    for (int ch = 0; ch < 3; ++ch) planes.push_back(random_grid(height, width, rng, lo, hi));
    return Image(ColorSpace::RGB, std::move(planes));
}

/// Direct O(M^2 N^2) evaluation of the orthonormal 2-D DCT-II.
inline Grid dct2_direct(const Grid& f) {
    const std::size_t m = f.rows(), n = f.cols();
    const double pi = std::numbers::pi;
    Grid out(m, n);
    for (std::size_t u = 0; u < m; ++u) {
        const double cu = u == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
        for (std::size_t v = 0; v < n; ++v) {
            const double cv = v == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    acc += f(i, j) * cu * cv * std::cos((i + 0.5) * pi * u / m) * std::cos((j + 0.5) * pi * v / n);
            out(u, v) = acc;
        }
    }
    return out;
}

/// Direct inverse, same basis.
inline Grid idct2_direct(const Grid& coeffs) {
    const std::size_t m = coeffs.rows(), n = coeffs.cols();
    const double pi = std::numbers::pi;
    Grid out(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t u = 0; u < m; ++u) {
                const double cu = u == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
                for (std::size_t v = 0; v < n; ++v) {
                    const double cv = v == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
                    acc += coeffs(u, v) * cu * cv * std::cos((i + 0.5) * pi * u / m) *
                           std::cos((j + 0.5) * pi * v / n);
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

/// Per-pixel BT.601 full-range forward conversion written out longhand.
inline void yuv_direct(double r, double g, double b, double& y, double& u, double& v) {
    y = 0.299 * r + 0.587 * g + 0.114 * b;
    u = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
    v = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
}

inline double max_abs_diff(const Grid& a, const Grid& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
    return m;
}

inline double max_abs_diff(const Image& a, const Image& b) {
    double m = 0.0;
    for (std::size_t ch = 0; ch < a.channels(); ++ch) m = std::max(m, max_abs_diff(a.plane(ch), b.plane(ch)));
    return m;
}

inline double energy(const Grid& g) {
    double e = 0.0;
    for (double x : g.values()) e += x * x;
    return e;
}

inline std::filesystem::path fixture_path() {
    return std::filesystem::path(FREQTRIG_TEST_DATA) / "natural_1000.bin";
}

/// The bundled natural-photo fixture: 1000 32x32 crops in CIFAR-10 layout.
inline const Dataset& natural_fixture() {
    static const Dataset ds = load_cifar10_binary(fixture_path());
    return ds;
}

inline std::vector<Image> fixture_images(std::size_t count) {
    const auto& ds = natural_fixture();
    return {ds.images.begin(), ds.images.begin() + static_cast<std::ptrdiff_t>(std::min(count, ds.size()))};
}

/// Fresh scratch directory under the system temp dir, removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("freqtrig_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace freqtrig::testing
