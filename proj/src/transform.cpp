#include "freqtrig/transform.hpp"

#include <cmath>
#include <numbers>

#include "freqtrig/error.hpp"
#include "freqtrig/parallel.hpp"

namespace freqtrig {
namespace {

// basis[k * n + i] = c(k) cos((i + 1/2) pi k / n)
std::vector<double> cosine_basis(std::size_t n) {
    std::vector<double> basis(n * n);
    const double c0 = std::sqrt(1.0 / static_cast<double>(n));
    const double ck = std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double scale = k == 0 ? c0 : ck;
        for (std::size_t i = 0; i < n; ++i) {
            basis[k * n + i] =
                scale * std::cos((static_cast<double>(i) + 0.5) * std::numbers::pi *
                                 static_cast<double>(k) / static_cast<double>(n));
        }
    }
    return basis;
}

const std::vector<double>& cached_basis(std::size_t n) {
    thread_local std::size_t cached_n = 0;
    thread_local std::vector<double> cached;
    if (cached_n != n) {
        cached = cosine_basis(n);
        cached_n = n;
    }
    return cached;
}

void check_input(const Grid& g, const char* op) {
    if (g.rows() == 0 || g.cols() == 0) throw InvalidInput(std::string(op) + ": empty plane");
    if (!g.all_finite()) throw InvalidInput(std::string(op) + ": non-finite value in plane");
}

// Applies basis (forward) or its transpose (inverse) along rows then columns.
Grid separable(const Grid& in, bool inverse) {
    const std::size_t m = in.rows(), n = in.cols();
    // Copied: the cache holds one size at a time.
    const std::vector<double> row_basis = cached_basis(m);
    const std::vector<double>& col_basis = cached_basis(n);

    // Column pass: tmp(r, q) = sum_j in(r, j) * B_n[q, j]   (forward)
    //                                     or  * B_n[j, q]   (inverse)
    Grid tmp(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t q = 0; q < n; ++q) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += in(r, j) * (inverse ? col_basis[j * n + q] : col_basis[q * n + j]);
            }
            tmp(r, q) = acc;
        }
    }
    Grid out(m, n);
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t i = 0; i < m; ++i) {
            const double w = inverse ? row_basis[i * m + p] : row_basis[p * m + i];
            if (w == 0.0) continue;
            for (std::size_t q = 0; q < n; ++q) out(p, q) += w * tmp(i, q);
        }
    }
    return out;
}

}  // namespace

Spectrum::Spectrum(ColorSpace source_space, std::vector<Grid> planes)
    : color_space_(source_space), planes_(std::move(planes)) {
    for (const auto& p : planes_) {
        if (p.rows() != planes_.front().rows() || p.cols() != planes_.front().cols()) {
            throw InvalidInput("spectrum planes differ in shape");
        }
    }
}

bool Spectrum::same_shape(const Spectrum& other) const noexcept {
    return width() == other.width() && height() == other.height() && channels() == other.channels();
}

Grid dct2(const Grid& plane) {
    check_input(plane, "dct2");
    return separable(plane, false);
}

Grid idct2(const Grid& coeffs) {
    check_input(coeffs, "idct2");
    return separable(coeffs, true);
}

double dct_basis(std::size_t i, std::size_t j, std::size_t u, std::size_t v, std::size_t rows,
                 std::size_t cols) {
    const double m = static_cast<double>(rows), n = static_cast<double>(cols);
    const double cu = u == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
    const double cv = v == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    return cu * cv * std::cos((static_cast<double>(i) + 0.5) * std::numbers::pi * u / m) *
           std::cos((static_cast<double>(j) + 0.5) * std::numbers::pi * v / n);
}

Spectrum image_to_spectrum(const Image& img) {
    std::vector<Grid> planes;
    planes.reserve(img.channels());
    for (const auto& p : img.planes()) planes.push_back(dct2(p));
    return Spectrum(img.color_space(), std::move(planes));
}

Image spectrum_to_image(const Spectrum& spec) {
    std::vector<Grid> planes;
    planes.reserve(spec.channels());
    for (std::size_t ch = 0; ch < spec.channels(); ++ch) planes.push_back(idct2(spec.plane(ch)));
    return Image(spec.color_space(), std::move(planes));
}

std::vector<Spectrum> to_spectra(std::span<const Image> images) {
    std::vector<Spectrum> out(images.size());
    parallel_for(images.size(), [&](std::size_t i) { out[i] = image_to_spectrum(images[i]); });
    return out;
}

}  // namespace freqtrig
