#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "freqtrig/image.hpp"

namespace freqtrig {

struct ProbeConfig {
    double split = 0.8;
    std::uint64_t seed = 0;
    std::size_t epochs = 500;
    double learning_rate = 0.01;
    std::size_t top_k = 10;
};

struct ProbeFeature {
    std::size_t channel = 0;
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;
};

struct ProbeResult {
    double accuracy = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::vector<double> weights;  // standardized feature space, (ch, u, v) row-major
    double bias = 0.0;
    std::vector<double> feature_mean;   // training standardization
    std::vector<double> feature_scale;  // 0 marks a constant feature
    std::vector<ProbeFeature> top_features;  // by |weight|, descending
};

/// Logistic regression on flattened YUV DCT coefficients, clean = 0 and
/// poisoned = 1. Each class is split with the same seeded permutation so
/// aligned clean/poisoned pairs land on the same side.
ProbeResult train_probe(std::span<const Image> clean, std::span<const Image> poisoned,
                        const ProbeConfig& cfg);

/// Accuracy of a trained probe on fresh labelled images (clean = 0,
/// poisoned = 1), using the training standardization.
double probe_accuracy(const ProbeResult& probe, std::span<const Image> clean, std::span<const Image> poisoned);

/// Flattened (ch, u, v) YUV DCT coefficients of an RGB image.
std::vector<double> spectral_features(const Image& rgb);

}  // namespace freqtrig
