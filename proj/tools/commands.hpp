#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freqtrig/trigger_io.hpp"

namespace freqtrig::cli {

inline constexpr const char* kToolName = "freqtrig";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kOutputVersion = 1;

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kValidation = 3 };

/// {version, tool, invocation} common to every JSON document we write.
Json header(const std::vector<std::string>& invocation);

struct AnalyzeArgs {
    std::string dataset, format = "auto", target_class, filter = "gaussian:3:1", out;
};

struct GenTriggerArgs {
    std::string dataset, target_class, out;
    std::size_t top_n = 3, pool = 50;
    std::vector<double> delta{10.0, 10.0, 10.0};
    double epsilon = 75.0;
    std::uint64_t seed = 0;
};

struct PoisonArgs {
    std::string dataset, target_class, trigger, out, manifest;
    double rate = 1.0;
    std::uint64_t seed = 0;
};

struct QualityArgs {
    std::string clean, poisoned, out, csv;
};

struct FilterArgs {
    std::string in, type = "gaussian", out;
    std::size_t kernel = 3, rank = 0;
    double sigma = 1.0;
};

struct ProbeArgs {
    std::string clean, poisoned, out;
    double split = 0.8;
    std::uint64_t seed = 0;
};

int run_analyze(const AnalyzeArgs& a, const std::vector<std::string>& invocation);
int run_gen_trigger(const GenTriggerArgs& a, const std::vector<std::string>& invocation);
int run_poison(const PoisonArgs& a, const std::vector<std::string>& invocation);
int run_quality(const QualityArgs& a, const std::vector<std::string>& invocation);
int run_filter(const FilterArgs& a, const std::vector<std::string>& invocation);
int run_probe(const ProbeArgs& a, const std::vector<std::string>& invocation);

}  // namespace freqtrig::cli
