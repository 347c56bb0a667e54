#include "freqtrig/filters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "freqtrig/error.hpp"
#include "freqtrig/transform.hpp"

namespace freqtrig {
namespace {

void check_kernel(std::size_t kernel_size) {
    if (kernel_size == 0 || kernel_size % 2 == 0) {
        throw InvalidArgument("kernel size must be odd and >= 1, got " + std::to_string(kernel_size));
    }
}

// Half-sample symmetric index: -1 -> 0, -2 -> 1, n -> n-1, n+1 -> n-2.
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
    const auto len = static_cast<std::ptrdiff_t>(n);
    if (len == 1) return 0;
    const std::ptrdiff_t period = 2 * len;
    i %= period;
    if (i < 0) i += period;
    return static_cast<std::size_t>(i < len ? i : period - 1 - i);
}

std::vector<double> gaussian_1d(std::size_t kernel_size, double sigma) {
    const auto half = static_cast<std::ptrdiff_t>(kernel_size / 2);
    std::vector<double> k(kernel_size);
    double sum = 0.0;
    for (std::ptrdiff_t x = -half; x <= half; ++x) {
        const double w = std::exp(-static_cast<double>(x * x) / (2.0 * sigma * sigma));
        k[static_cast<std::size_t>(x + half)] = w;
        sum += w;
    }
    for (double& w : k) w /= sum;
    return k;
}

// Separable correlation with a symmetric 1-D kernel along rows then columns.
Grid convolve_separable(const Grid& in, const std::vector<double>& k) {
    const std::size_t rows = in.rows(), cols = in.cols();
    const auto half = static_cast<std::ptrdiff_t>(k.size() / 2);
    Grid tmp(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (std::ptrdiff_t d = -half; d <= half; ++d) {
                acc += k[static_cast<std::size_t>(d + half)] *
                       in(r, reflect(static_cast<std::ptrdiff_t>(c) + d, cols));
            }
            tmp(r, c) = acc;
        }
    }
    Grid out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (std::ptrdiff_t d = -half; d <= half; ++d) {
                acc += k[static_cast<std::size_t>(d + half)] *
                       tmp(reflect(static_cast<std::ptrdiff_t>(r) + d, rows), c);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

template <typename PlaneFn>
Image map_planes(const Image& img, PlaneFn&& fn) {
    std::vector<Grid> planes;
    planes.reserve(img.channels());
    for (const auto& p : img.planes()) planes.push_back(fn(p));
    return Image(img.color_space(), std::move(planes));
}

Grid truncate_rank(const Grid& coeffs, std::size_t rank) {
    using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Matrix a = Eigen::Map<const Matrix>(coeffs.values().data(), static_cast<Eigen::Index>(coeffs.rows()),
                                        static_cast<Eigen::Index>(coeffs.cols()));
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto k = static_cast<Eigen::Index>(rank);
    Matrix low = svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
                 svd.matrixV().leftCols(k).transpose();
    Grid out(coeffs.rows(), coeffs.cols());
    std::copy(low.data(), low.data() + low.size(), out.values().begin());
    return out;
}

}  // namespace

Grid gaussian_kernel(std::size_t kernel_size, double sigma) {
    check_kernel(kernel_size);
    if (!(sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
    const auto k = gaussian_1d(kernel_size, sigma);
    Grid out(kernel_size, kernel_size);
    for (std::size_t r = 0; r < kernel_size; ++r)
        for (std::size_t c = 0; c < kernel_size; ++c) out(r, c) = k[r] * k[c];
    return out;
}

Image gaussian_filter(const Image& img, std::size_t kernel_size, double sigma) {
    check_kernel(kernel_size);
    if (!(sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
    const auto k = gaussian_1d(kernel_size, sigma);
    return map_planes(img, [&](const Grid& p) { return convolve_separable(p, k); });
}

Image mean_filter(const Image& img, std::size_t kernel_size) {
    check_kernel(kernel_size);
    const std::vector<double> k(kernel_size, 1.0 / static_cast<double>(kernel_size));
    return map_planes(img, [&](const Grid& p) { return convolve_separable(p, k); });
}

Image median_filter(const Image& img, std::size_t kernel_size) {
    check_kernel(kernel_size);
    const auto half = static_cast<std::ptrdiff_t>(kernel_size / 2);
    return map_planes(img, [&](const Grid& p) {
        Grid out(p.rows(), p.cols());
        std::vector<double> window(kernel_size * kernel_size);
        for (std::size_t r = 0; r < p.rows(); ++r) {
            for (std::size_t c = 0; c < p.cols(); ++c) {
                std::size_t n = 0;
                for (std::ptrdiff_t dr = -half; dr <= half; ++dr) {
                    const auto rr = reflect(static_cast<std::ptrdiff_t>(r) + dr, p.rows());
                    for (std::ptrdiff_t dc = -half; dc <= half; ++dc) {
                        window[n++] = p(rr, reflect(static_cast<std::ptrdiff_t>(c) + dc, p.cols()));
                    }
                }
                auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
                std::nth_element(window.begin(), mid, window.end());
                out(r, c) = *mid;
            }
        }
        return out;
    });
}

std::size_t default_svd_rank(const Image& img) {
    const std::size_t side = std::min(img.width(), img.height());
    return (side + 3) / 4;
}

Image svd_filter(const Image& img, std::size_t rank) {
    const std::size_t side = std::min(img.width(), img.height());
    if (rank < 1 || rank > side) {
        throw InvalidArgument("svd rank must lie in [1, " + std::to_string(side) + "], got " +
                              std::to_string(rank));
    }
    return map_planes(img, [&](const Grid& p) { return idct2(truncate_rank(dct2(p), rank)); });
}

FilterSpec FilterSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) throw InvalidArgument("empty filter spec");

    auto number = [&](std::size_t idx) -> double {
        try {
            std::size_t used = 0;
            const double x = std::stod(parts.at(idx), &used);
            if (used != parts[idx].size()) throw std::invalid_argument("trailing");
            return x;
        } catch (const std::exception&) {
            throw InvalidArgument("bad number in filter spec '" + text + "'");
        }
    };
    auto count = [&](std::size_t idx) -> std::size_t {
        const double x = number(idx);
        if (x < 0 || x != std::floor(x)) throw InvalidArgument("bad count in filter spec '" + text + "'");
        return static_cast<std::size_t>(x);
    };

    FilterSpec spec;
    const std::string& name = parts[0];
    if (name == "gaussian") {
        spec.type = FilterType::Gaussian;
        if (parts.size() > 3) throw InvalidArgument("gaussian filter spec is gaussian[:K[:SIGMA]]");
        if (parts.size() > 1) spec.kernel_size = count(1);
        if (parts.size() > 2) spec.sigma = number(2);
        check_kernel(spec.kernel_size);
        if (!(spec.sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
    } else if (name == "mean" || name == "median") {
        spec.type = name == "mean" ? FilterType::Mean : FilterType::Median;
        if (parts.size() > 2) throw InvalidArgument(name + " filter spec is " + name + "[:K]");
        if (parts.size() > 1) spec.kernel_size = count(1);
        check_kernel(spec.kernel_size);
    } else if (name == "svd") {
        spec.type = FilterType::Svd;
        if (parts.size() > 2) throw InvalidArgument("svd filter spec is svd[:RANK]");
        if (parts.size() > 1) {
            spec.rank = count(1);
            if (spec.rank == 0) throw InvalidArgument("svd rank must be >= 1");
        }
    } else {
        throw InvalidArgument("unknown filter '" + name + "'");
    }
    return spec;
}

std::string FilterSpec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (type) {
        case FilterType::Gaussian: os << "gaussian:" << kernel_size << ':' << sigma; break;
        case FilterType::Mean: os << "mean:" << kernel_size; break;
        case FilterType::Median: os << "median:" << kernel_size; break;
        case FilterType::Svd:
            os << "svd";
            if (rank != 0) os << ':' << rank;
            break;
    }
    return os.str();
}

Image apply_filter(const Image& img, const FilterSpec& spec) {
    switch (spec.type) {
        case FilterType::Gaussian: return gaussian_filter(img, spec.kernel_size, spec.sigma);
        case FilterType::Mean: return mean_filter(img, spec.kernel_size);
        case FilterType::Median: return median_filter(img, spec.kernel_size);
        case FilterType::Svd: return svd_filter(img, spec.rank == 0 ? default_svd_rank(img) : spec.rank);
    }
    throw InvalidArgument("unknown filter type");
}

}  // namespace freqtrig
