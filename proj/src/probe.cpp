#include "freqtrig/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "freqtrig/color.hpp"
#include "freqtrig/error.hpp"
#include "freqtrig/parallel.hpp"
#include "freqtrig/random.hpp"
#include "freqtrig/transform.hpp"

namespace freqtrig {
namespace {

struct Sample {
    const std::vector<double>* features;
    double label;
};

double decision(const std::vector<double>& raw, const ProbeResult& p) {
    double z = p.bias;
    for (std::size_t d = 0; d < raw.size(); ++d) {
        if (p.feature_scale[d] > 0) z += p.weights[d] * (raw[d] - p.feature_mean[d]) / p.feature_scale[d];
    }
    return z;
}

double sigmoid(double z) {
    return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

std::vector<std::vector<double>> extract(std::span<const Image> images) {
    std::vector<std::vector<double>> out(images.size());
    parallel_for(images.size(), [&](std::size_t i) { out[i] = spectral_features(images[i]); });
    return out;
}

}  // namespace

std::vector<double> spectral_features(const Image& rgb) {
    const Spectrum spec = image_to_spectrum(rgb_to_yuv(rgb));
    std::vector<double> f;
    f.reserve(spec.channels() * spec.height() * spec.width());
    for (std::size_t ch = 0; ch < spec.channels(); ++ch) {
        const auto values = spec.plane(ch).values();
        f.insert(f.end(), values.begin(), values.end());
    }
    return f;
}

ProbeResult train_probe(std::span<const Image> clean, std::span<const Image> poisoned, const ProbeConfig& cfg) {
    if (clean.empty() || poisoned.empty()) throw InvalidInput("probe needs clean and poisoned images");
    if (!(cfg.split > 0.0 && cfg.split < 1.0)) throw InvalidArgument("probe split must lie in (0, 1)");
    if (cfg.epochs == 0 || !(cfg.learning_rate > 0.0)) throw InvalidArgument("probe needs epochs > 0 and a positive rate");
    for (const auto& img : poisoned) {
        if (!img.same_shape(clean.front())) throw InvalidInput("probe images differ in shape");
    }
    for (const auto& img : clean) {
        if (!img.same_shape(clean.front())) throw InvalidInput("probe images differ in shape");
    }

    const auto clean_f = extract(clean);
    const auto poison_f = extract(poisoned);
    const std::size_t dim = clean_f.front().size();

    std::vector<Sample> train, test;
    auto split_class = [&](const std::vector<std::vector<double>>& feats, double label) {
        const auto perm = seeded_permutation(feats.size(), cfg.seed);
        const auto n_train = static_cast<std::size_t>(std::llround(cfg.split * static_cast<double>(feats.size())));
        for (std::size_t k = 0; k < perm.size(); ++k) {
            (k < n_train ? train : test).push_back({&feats[perm[k]], label});
        }
    };
    split_class(clean_f, 0.0);
    split_class(poison_f, 1.0);
    if (train.empty() || test.empty()) throw InvalidInput("probe split leaves an empty train or test set");

    // Standardize with training statistics; constant features map to 0.
    std::vector<double> mu(dim, 0.0), sd(dim, 0.0);
    for (const auto& s : train)
        for (std::size_t d = 0; d < dim; ++d) mu[d] += (*s.features)[d];
    for (double& m : mu) m /= static_cast<double>(train.size());
    for (const auto& s : train) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double x = (*s.features)[d] - mu[d];
            sd[d] += x * x;
        }
    }
    for (double& s : sd) s = std::sqrt(s / static_cast<double>(train.size()));
    auto standardize = [&](const Sample& s) {
        std::vector<double> x(dim);
        for (std::size_t d = 0; d < dim; ++d) x[d] = sd[d] > 0 ? ((*s.features)[d] - mu[d]) / sd[d] : 0.0;
        return x;
    };
    std::vector<std::vector<double>> xtrain;
    xtrain.reserve(train.size());
    for (const auto& s : train) xtrain.push_back(standardize(s));

    ProbeResult result;
    result.weights.assign(dim, 0.0);
    double& bias = result.bias;
    std::vector<double> grad(dim);
    const double inv_n = 1.0 / static_cast<double>(train.size());
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t i = 0; i < train.size(); ++i) {
            const auto& x = xtrain[i];
            const double z = std::inner_product(x.begin(), x.end(), result.weights.begin(), bias);
            const double err = sigmoid(z) - train[i].label;
            for (std::size_t d = 0; d < dim; ++d) grad[d] += err * x[d];
            grad_b += err;
        }
        for (std::size_t d = 0; d < dim; ++d) result.weights[d] -= cfg.learning_rate * grad[d] * inv_n;
        bias -= cfg.learning_rate * grad_b * inv_n;
    }

    result.feature_mean = mu;
    result.feature_scale = sd;
    std::size_t correct = 0;
    for (const auto& s : test) {
        if ((decision(*s.features, result) > 0.0 ? 1.0 : 0.0) == s.label) ++correct;
    }
    result.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
    result.n_train = train.size();
    result.n_test = test.size();

    const std::size_t rows = clean.front().height(), cols = clean.front().width();
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t k = std::min(cfg.top_k, dim);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double wa = std::abs(result.weights[a]), wb = std::abs(result.weights[b]);
                          return wa != wb ? wa > wb : a < b;
                      });
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t idx = order[i];
        result.top_features.push_back(
            {idx / (rows * cols), (idx / cols) % rows, idx % cols, result.weights[idx]});
    }
    return result;
}

double probe_accuracy(const ProbeResult& probe, std::span<const Image> clean, std::span<const Image> poisoned) {
    if (clean.size() + poisoned.size() == 0) throw InvalidInput("no images to score");
    const auto clean_f = extract(clean);
    const auto poison_f = extract(poisoned);
    std::size_t correct = 0;
    for (const auto& f : clean_f) {
        if (f.size() != probe.weights.size()) throw InvalidInput("image shape does not match the probe");
        correct += decision(f, probe) <= 0.0;
    }
    for (const auto& f : poison_f) {
        if (f.size() != probe.weights.size()) throw InvalidInput("image shape does not match the probe");
        correct += decision(f, probe) > 0.0;
    }
    return static_cast<double>(correct) / static_cast<double>(clean.size() + poisoned.size());
}

}  // namespace freqtrig
