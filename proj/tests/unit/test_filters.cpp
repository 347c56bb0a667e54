#include <doctest.h>

#include <Eigen/Dense>

#include "freqtrig/error.hpp"
#include "freqtrig/filters.hpp"
#include "freqtrig/transform.hpp"
#include "test_support.hpp"

using namespace freqtrig;
using namespace freqtrig::testing;

namespace {

Image constant_image(double value, std::size_t w = 9, std::size_t h = 7) {
    return Image(w, h, 3, ColorSpace::RGB, value);
}

Image impulse(double background, double spike, std::size_t w, std::size_t h, std::size_t r, std::size_t c) {
    Image img(w, h, 3, ColorSpace::RGB, background);
    for (std::size_t ch = 0; ch < 3; ++ch) img.at(ch, r, c) = spike;
    return img;
}

}  // namespace

TEST_CASE("every filter is shape preserving and idempotent on constants") {
    const Image c = constant_image(77.0);
    for (const auto& out : {gaussian_filter(c, 3, 1.0), gaussian_filter(c, 5, 2.5), mean_filter(c, 3),
                            median_filter(c, 5), svd_filter(c, 2)}) {
        CHECK(out.same_shape(c));
        CHECK(max_abs_diff(out, c) < 1e-9);
    }
}

TEST_CASE("kernel size 1 is the identity") {
    std::mt19937_64 rng(4);
    const Image img = random_image(6, 5, rng);
    CHECK(max_abs_diff(gaussian_filter(img, 1, 0.7), img) < 1e-12);
    CHECK(max_abs_diff(mean_filter(img, 1), img) == 0.0);
    CHECK(max_abs_diff(median_filter(img, 1), img) == 0.0);
}

TEST_CASE("gaussian weights of a single bright pixel") {
    const Image img = impulse(0.0, 255.0, 7, 7, 3, 3);
    const Image out = gaussian_filter(img, 3, 1.0);
    // 255 * (1 / (1 + 2 e^-1/2))^2
    CHECK(out.at(0, 3, 3) == doctest::Approx(52.065888670772814).epsilon(1e-12));
    const Grid k = gaussian_kernel(3, 1.0);
    CHECK(out.at(1, 2, 4) == doctest::Approx(255.0 * k(0, 2)).epsilon(1e-12));
    double sum = 0.0;
    for (double w : k.values()) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mean filter spreads an interior 9 into a 3x3 block of ones") {
    const Image out = mean_filter(impulse(0.0, 9.0, 8, 8, 4, 3), 3);
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            const bool covered = r >= 3 && r <= 5 && c >= 2 && c <= 4;
            CHECK(out.at(0, r, c) == doctest::Approx(covered ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("median filter removes an isolated salt pixel") {
    const Image out = median_filter(impulse(40.0, 255.0, 6, 6, 2, 2), 3);
    CHECK(max_abs_diff(out, constant_image(40.0, 6, 6)) == 0.0);
    const Image edge = median_filter(impulse(40.0, 255.0, 6, 6, 0, 0), 3);
    CHECK(edge.at(2, 0, 0) == 40.0);
}

TEST_CASE("gaussian and mean filters are linear") {
    std::mt19937_64 rng(12);
    const Image img = random_image(10, 8, rng);
    Image scaled = img;
    for (auto& p : scaled.planes())
        for (double& x : p.values()) x *= -2.5;
    for (auto fn : {+[](const Image& i) { return gaussian_filter(i, 5, 1.3); },
                    +[](const Image& i) { return mean_filter(i, 3); }}) {
        const Image a = fn(scaled);
        Image b = fn(img);
        for (auto& p : b.planes())
            for (double& x : p.values()) x *= -2.5;
        CHECK(max_abs_diff(a, b) < 1e-9);
    }
}

TEST_CASE("reflect padding makes the gaussian diagonal in the DCT basis") {
    // Half-sample symmetric extension is exactly what DCT-II assumes, so each
    // basis image is an eigenvector of the symmetric 3-tap filter.
    const std::size_t m = 8, n = 8;
    Grid coeffs(m, n);
    coeffs(2, 5) = 100.0;
    const Image basis(ColorSpace::RGB, {idct2(coeffs), idct2(coeffs), idct2(coeffs)});
    const Grid filtered = dct2(gaussian_filter(basis, 3, 1.0).plane(0));
    const Grid k = gaussian_kernel(3, 1.0);
    const double a = k(1, 1) / k(1, 0) / (k(1, 1) / k(1, 0) + 2.0);  // 1-D centre weight
    const double b = (1.0 - a) / 2.0;
    auto h = [&](std::size_t f, std::size_t len) { return a + 2.0 * b * std::cos(std::numbers::pi * f / len); };
    CHECK(filtered(2, 5) == doctest::Approx(100.0 * h(2, m) * h(5, n)).epsilon(1e-12));
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != 2 || v != 5) CHECK(std::abs(filtered(u, v)) < 1e-9);
}

TEST_CASE("gaussian attenuates high frequencies more than low ones") {
    std::mt19937_64 rng(2024);
    const std::size_t side = 32, bins = 2 * side - 1;
    std::vector<double> change(bins, 0.0);
    std::vector<std::size_t> members(bins, 0);
    for (int n = 0; n < 100; ++n) {
        const Image img = random_image(side, side, rng);
        const Grid f = dct2(img.plane(0));
        const Grid g = dct2(gaussian_filter(img, 3, 1.0).plane(0));
        for (std::size_t u = 0; u < side; ++u) {
            for (std::size_t v = 0; v < side; ++v) {
                change[u + v] += std::abs(f(u, v) - g(u, v)) / (std::abs(f(u, v)) + 1e-6);
                ++members[u + v];
            }
        }
    }
    for (std::size_t r = 0; r < bins; ++r) change[r] /= static_cast<double>(members[r]);

    // Up to the one-axis Nyquist band the response falls monotonically.
    std::size_t low_inversions = 0;
    for (std::size_t r = 0; r + 1 < side; ++r) low_inversions += change[r + 1] < change[r];
    CHECK(low_inversions <= (side - 1) / 20);

    // Beyond it the 3x3 kernel's small negative lobe lets |1 - H(u)H(v)|
    // overshoot 1 slightly and drift back; the drift stays tiny.
    double worst_drop = 0.0;
    for (std::size_t r = side; r + 1 < bins; ++r) worst_drop = std::max(worst_drop, change[r] - change[r + 1]);
    CHECK(worst_drop < 0.03);
    CHECK(change[bins - 1] > 0.9);
    CHECK(change[1] < 0.01);
}

TEST_CASE("svd filter: full rank is the identity, rank-1 spectra survive rank 1") {
    std::mt19937_64 rng(31);
    const Image img = random_image(12, 9, rng);
    CHECK(max_abs_diff(svd_filter(img, 9), img) < 1e-6);

    Grid outer(9, 12);
    for (std::size_t u = 0; u < 9; ++u)
        for (std::size_t v = 0; v < 12; ++v) outer(u, v) = (1.0 + u) * (3.0 - 0.5 * v);
    const Image r1(ColorSpace::RGB, {idct2(outer), idct2(outer), idct2(outer)});
    CHECK(max_abs_diff(svd_filter(r1, 1), r1) < 1e-6);
}

TEST_CASE("svd filter error matches the Eckart-Young bound from an independent eigen oracle") {
    std::mt19937_64 rng(77);
    const Image img = random_image(32, 32, rng);
    const std::size_t rank = 8;
    const Image out = svd_filter(img, rank);
    for (std::size_t ch = 0; ch < 3; ++ch) {
        const Grid spec = dct2(img.plane(ch));
        const Grid spec_out = dct2(out.plane(ch));
        double err = 0.0;
        for (std::size_t k = 0; k < spec.size(); ++k) {
            const double d = spec.values()[k] - spec_out.values()[k];
            err += d * d;
        }
        // Singular values squared are the eigenvalues of A^T A.
        Eigen::MatrixXd a(32, 32);
        for (int r = 0; r < 32; ++r)
            for (int c = 0; c < 32; ++c) a(r, c) = spec(r, c);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a);
        const Eigen::VectorXd lambda = eig.eigenvalues();  // ascending
        double discarded = 0.0;
        for (int i = 0; i < 32 - static_cast<int>(rank); ++i) discarded += std::max(0.0, lambda(i));
        CHECK(std::sqrt(err) == doctest::Approx(std::sqrt(discarded)).epsilon(1e-6));
    }
}

TEST_CASE("argument validation") {
    const Image img = constant_image(1.0);
    CHECK_THROWS_AS(gaussian_filter(img, 4, 1.0), InvalidArgument);
    CHECK_THROWS_AS(gaussian_filter(img, 3, 0.0), InvalidArgument);
    CHECK_THROWS_AS(mean_filter(img, 0), InvalidArgument);
    CHECK_THROWS_AS(median_filter(img, 2), InvalidArgument);
    CHECK_THROWS_AS(svd_filter(img, 0), InvalidArgument);
    CHECK_THROWS_AS(svd_filter(img, 8), InvalidArgument);
    CHECK(default_svd_rank(img) == 2);
    CHECK(default_svd_rank(Image(32, 32, 3, ColorSpace::RGB)) == 8);
}

TEST_CASE("filter spec text form") {
    CHECK(FilterSpec::parse("gaussian:5:2").sigma == 2.0);
    CHECK(FilterSpec::parse("gaussian").kernel_size == 3);
    CHECK(FilterSpec::parse("median:5").type == FilterType::Median);
    CHECK(FilterSpec::parse("svd:4").rank == 4);
    CHECK(FilterSpec::parse("svd").rank == 0);
    for (const char* text : {"gaussian:3:1", "mean:5", "median:3", "svd:7", "svd", "gaussian:7:0.75"}) {
        const auto spec = FilterSpec::parse(text);
        CHECK(FilterSpec::parse(spec.to_string()) == spec);
    }
    CHECK(FilterSpec{}.to_string() == "gaussian:3:1");
    CHECK_THROWS_AS(FilterSpec::parse("bilateral:3"), InvalidArgument);
    CHECK_THROWS_AS(FilterSpec::parse("mean:4"), InvalidArgument);
    CHECK_THROWS_AS(FilterSpec::parse("gaussian:3:x"), InvalidArgument);
    CHECK_THROWS_AS(FilterSpec::parse("svd:0"), InvalidArgument);
}
