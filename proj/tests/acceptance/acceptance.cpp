// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.
//
// Set FREQTRIG_CIFAR10_DIR to a directory holding data_batch_{1..5}.bin to
// run the invisibility and trigger-selection criteria on CIFAR-10 itself;
// otherwise the bundled natural-photo fixture is used.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "freqtrig/color.hpp"
#include "freqtrig/filters.hpp"
#include "freqtrig/inject.hpp"
#include "freqtrig/probe.hpp"
#include "freqtrig/quality.hpp"
#include "freqtrig/transform.hpp"
#include "freqtrig/trigger.hpp"
#include "freqtrig/trigger_io.hpp"
#include "test_support.hpp"

using namespace freqtrig;
using namespace freqtrig::testing;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "C" << id << " " << name << ": " << detail << std::endl;
    if (!pass) ++failures;
}

std::string fmt(double x, int precision = 4) {
    std::ostringstream os;
    os.precision(precision);
    os << x;
    return os.str();
}

/// CIFAR-10 training batches when FREQTRIG_CIFAR10_DIR is set and complete.
std::optional<Dataset> cifar10_train() {
    const char* dir = std::getenv("FREQTRIG_CIFAR10_DIR");
    if (!dir || !*dir) return std::nullopt;
    std::vector<fs::path> batches;
    for (int k = 1; k <= 5; ++k) {
        const fs::path p = fs::path(dir) / ("data_batch_" + std::to_string(k) + ".bin");
        if (!fs::exists(p)) return std::nullopt;
        batches.push_back(p);
    }
    return load_cifar10_binary(batches);
}

std::vector<Image> poison_all(std::span<const Image> clean, const FrequencyTrigger& t) {
    std::vector<Image> out(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) out[i] = quantized(inject_trigger(clean[i], t));
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FREQTRIG_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void transform_correctness() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    const std::pair<std::size_t, std::size_t> sizes[] = {{1, 1}, {2, 2}, {5, 7}, {32, 32}, {96, 96}};
    double roundtrip = 0.0, parseval = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const auto [h, w] = sizes[n % 5];
        const Image img = random_image(w, h, rng);
        const Spectrum spec = image_to_spectrum(img);
        roundtrip = std::max(roundtrip, max_abs_diff(spectrum_to_image(spec), img));
        for (std::size_t ch = 0; ch < 3; ++ch) {
            const double e = energy(img.plane(ch));
            parseval = std::max(parseval, std::abs(energy(spec.plane(ch)) - e) / e);
        }
    }
    double oracle = 0.0;
    for (int n = 0; n < 200; ++n) {
        const Grid g = random_grid(8, 8, rng);
        oracle = std::max(oracle, max_abs_diff(dct2(g), dct2_direct(g)));
        oracle = std::max(oracle, max_abs_diff(idct2(g), idct2_direct(g)));
    }
    const double secs = seconds_since(t0);
    report(1, "transform correctness",
           roundtrip <= 1e-9 && parseval <= 1e-9 && oracle <= 1e-9 && secs < 10.0,
           "round-trip max err " + fmt(roundtrip) + ", Parseval rel err " + fmt(parseval) + ", 8x8 oracle err " +
               fmt(oracle) + " (tol 1e-9), " + fmt(secs, 3) + " s (limit 10 s)");
}

void injection_exactness(const FrequencyTrigger& t) {
    const auto& fx = natural_fixture();
    double pre = 0.0;
    std::size_t ok = 0;
    double worst = 0.0;
    for (const auto& img : fx.images) {
        pre = std::max(pre, verify_injection(inject_trigger_raw(img, t), t).max_deviation);
        const double dev = verify_injection(quantized(inject_trigger(img, t)), t).max_deviation;
        ok += dev < 3.0;
        worst = std::max(worst, dev);
    }
    const double frac = static_cast<double>(ok) / static_cast<double>(fx.size());
    report(2, "injection exactness", pre <= 1e-9 && frac >= 0.99,
           "pre-quantization max deviation " + fmt(pre) + " (tol 1e-9); post-quantization deviation < 3.0 on " +
               fmt(100.0 * frac, 4) + "% of " + std::to_string(fx.size()) + " images (need >= 99%), worst " +
               fmt(worst));
}

void invisibility(const std::optional<Dataset>& cifar, const FrequencyTrigger& t) {
    if (cifar) {
        const auto idx = cifar->indices_of(1);
        std::vector<Image> clean;
        for (std::size_t i : idx) clean.push_back(cifar->images[i]);
        const auto t0 = Clock::now();
        const auto q = batch_quality(clean, poison_all(clean, t));
        const double secs = seconds_since(t0);
        report(3, "invisibility (CIFAR-10 automobile)",
               std::abs(q.mean_psnr - 24.11) <= 2.0 && std::abs(q.mean_ssim - 0.9024) <= 0.05 && secs < 120.0,
               "mean PSNR " + fmt(q.mean_psnr) + " dB (target 24.11 +- 2.0), mean SSIM " + fmt(q.mean_ssim) +
                   " (target 0.9024 +- 0.05) over " + std::to_string(clean.size()) + " images, " + fmt(secs, 3) +
                   " s");
        return;
    }
    const auto clean = fixture_images(200);
    const auto q = batch_quality(clean, poison_all(clean, t));

    // Throughput at the CIFAR class size: 5000 images.
    const auto& all = natural_fixture().images;
    const auto t0 = Clock::now();
    std::vector<Image> big;
    for (int rep = 0; rep < 5; ++rep) big.insert(big.end(), all.begin(), all.end());
    batch_quality(big, poison_all(big, t));
    const double secs = seconds_since(t0);

    report(3, "invisibility (natural-photo fixture; CIFAR-10 unavailable)",
           q.mean_psnr > 20.0 && q.mean_psnr < 30.0 && q.mean_ssim > 0.85 && q.mean_ssim < 0.97 && secs < 120.0,
           "mean PSNR " + fmt(q.mean_psnr) + " dB in (20, 30), mean SSIM " + fmt(q.mean_ssim) +
               " in (0.85, 0.97) over 200 images; 5000-image poison+score " + fmt(secs, 3) + " s (limit 120 s)");
}

void trigger_plausibility(const std::optional<Dataset>& cifar) {
    std::vector<Image> slice;
    std::string source;
    if (cifar) {
        for (std::size_t i : cifar->indices_of(1)) slice.push_back(cifar->images[i]);
        source = "CIFAR-10 automobile";
    } else {
        // The fixture's vehicle photos: motorcycle crops, labels 4 and 5.
        const auto& fx = natural_fixture();
        for (std::size_t i = 0; i < fx.size(); ++i)
            if (fx.labels[i] == 4 || fx.labels[i] == 5) slice.push_back(fx.images[i]);
        source = "fixture motorcycle crops";
    }
    const auto g = generate_trigger(slice, TriggerConfig{});
    bool low = g.trigger.entries.size() == 3;
    std::string picked;
    for (const auto& e : g.trigger.entries) {
        low = low && e.freq.u + e.freq.v <= 12;
        picked += " (" + std::to_string(e.freq.u) + "," + std::to_string(e.freq.v) + ")";
    }
    report(4, "trigger-generation plausibility", low,
           source + ", " + std::to_string(slice.size()) + " images, selected" + picked + " (need 3 with u+v <= 12)");
}

void filter_robustness(const FrequencyTrigger& low) {
    FrequencyTrigger high = low;
    high.entries = {{{28, 0}, {40, 35, 30}}, {{30, 0}, {25, 25, 25}}, {{31, 0}, {25, 25, 25}}};
    const FilterSpec gauss = FilterSpec::parse("gaussian:3:1");
    const auto& imgs = natural_fixture().images;

    auto relative_deviation = [&](const FrequencyTrigger& t) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& img : imgs) {
            const Image filtered = apply_filter(quantized(inject_trigger(img, t)), gauss);
            const Spectrum spec = image_to_spectrum(rgb_to_yuv(filtered));
            for (const auto& e : t.entries)
                for (std::size_t ch = 0; ch < 3; ++ch, ++count)
                    sum += std::abs(spec.at(ch, e.freq.u, e.freq.v) - e.intensity[ch]) / std::abs(e.intensity[ch]);
        }
        return sum / static_cast<double>(count);
    };
    const double d_low = relative_deviation(low), d_high = relative_deviation(high);
    report(5, "filter-robustness direction", d_high >= 3.0 * d_low,
           "mean relative deviation after gaussian:3:1 low " + fmt(d_low) + " vs high-frequency control " +
               fmt(d_high) + ", ratio " + fmt(d_high / d_low) + " (need >= 3)");
}

void pattern_variability(const FrequencyTrigger& t) {
    const auto imgs = fixture_images(100);
    std::vector<std::vector<Grid>> patterns;
    for (const auto& img : imgs) patterns.push_back(render_spatial_trigger(t, img));
    std::size_t identical = 0;
    for (std::size_t a = 0; a < patterns.size(); ++a)
        for (std::size_t b = a + 1; b < patterns.size(); ++b) {
            double d = 0.0;
            for (std::size_t ch = 0; ch < 3; ++ch) d = std::max(d, max_abs_diff(patterns[a][ch], patterns[b][ch]));
            identical += d == 0.0;
        }
    std::size_t varying = 0, total = 0;
    const std::size_t pixels = patterns.front().front().size();
    for (std::size_t ch = 0; ch < 3; ++ch)
        for (std::size_t k = 0; k < pixels; ++k, ++total) {
            double mean = 0.0, sq = 0.0;
            for (const auto& p : patterns) mean += p[ch].values()[k];
            mean /= static_cast<double>(patterns.size());
            for (const auto& p : patterns) sq += std::pow(p[ch].values()[k] - mean, 2);
            varying += sq > 0.0;
        }
    const double frac = static_cast<double>(varying) / static_cast<double>(total);
    report(6, "pattern variability", identical == 0 && frac >= 0.95,
           std::to_string(identical) + " identical pattern pairs among 100 images; per-pixel std > 0 at " +
               fmt(100.0 * frac, 4) + "% of pixels (need >= 95%)");
}

void separability(const FrequencyTrigger& t) {
    const auto t0 = Clock::now();
    const auto clean = fixture_images(200);
    ProbeConfig cfg;
    const auto with = train_probe(clean, poison_all(clean, t), cfg);
    FrequencyTrigger empty;
    empty.width = t.width;
    empty.height = t.height;
    const auto without = train_probe(clean, poison_all(clean, empty), cfg);
    const double secs = seconds_since(t0);

    std::set<Frequency> trig;
    for (const auto& e : t.entries) trig.insert(e.freq);
    bool top_on_trigger = with.top_features.size() >= trig.size();
    for (std::size_t i = 0; top_on_trigger && i < trig.size(); ++i)
        top_on_trigger = trig.count({with.top_features[i].u, with.top_features[i].v}) > 0;

    report(7, "separability probe",
           with.accuracy >= 0.99 && std::abs(without.accuracy - 0.5) <= 0.1 && top_on_trigger && secs < 30.0,
           "held-out accuracy " + fmt(with.accuracy) + " with trigger (need >= 0.99), " + fmt(without.accuracy) +
               " with empty trigger (need 0.5 +- 0.1), top-3 weights on trigger frequencies: " +
               (top_on_trigger ? "yes" : "no") + ", " + fmt(secs, 3) + " s (limit 30 s)");
}

void determinism() {
    TempDir dir("acceptance_det");
    fs::copy_file(fixture_path(), dir / "data.bin");
    const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
    const std::string gen = "gen-trigger --dataset " + q(dir / "data.bin") + " --class 4 --seed 3 --out " +
                            q(dir / "trigger.json");
    const std::string poison = "poison --dataset " + q(dir / "data.bin") + " --class 4 --rate 0.5 --seed 3 --trigger " +
                               q(dir / "trigger.json") + " --out " + q(dir / "out") + " --manifest " +
                               q(dir / "manifest.json");
    bool ok = run_cli(gen) == 0 && run_cli(poison) == 0;
    const std::string t1 = slurp(dir / "trigger.json"), d1 = slurp(dir / "out" / "data.bin"),
                      m1 = slurp(dir / "manifest.json");
    ok = ok && run_cli(gen) == 0 && run_cli(poison) == 0;
    const bool same = t1 == slurp(dir / "trigger.json") && d1 == slurp(dir / "out" / "data.bin") &&
                      m1 == slurp(dir / "manifest.json");

    // The same through the library, in-process.
    const auto slice = fixture_images(150);
    const bool lib_same = generate_trigger(slice, TriggerConfig{}).trigger ==
                          generate_trigger(slice, TriggerConfig{}).trigger;
    report(8, "determinism", ok && same && lib_same && !t1.empty() && !d1.empty() && !m1.empty(),
           std::string("two CLI runs: trigger, poisoned dataset and manifest ") +
               (same ? "bitwise identical" : "differ") + (ok ? "" : " (CLI run failed)") +
               "; library trigger generation " + (lib_same ? "identical" : "differs"));
}

}  // namespace

int main() {
    const FrequencyTrigger published = load_trigger(fs::path(FREQTRIG_SHARE) / "cifar10_automobile_trigger.json");
    std::optional<Dataset> cifar;
    try {
        cifar = cifar10_train();
    } catch (const std::exception& e) {
        std::cout << "CIFAR-10 batches unreadable (" << e.what() << "), using the fixture" << std::endl;
    }

    transform_correctness();
    injection_exactness(published);
    invisibility(cifar, published);
    trigger_plausibility(cifar);
    filter_robustness(published);
    pattern_variability(published);
    separability(published);
    determinism();
    std::cout << "[N/A ] C9 model-level results: attack success, clean accuracy and model-level defence "
                 "evaluations need trained networks and are not produced; C5-C7 are the stand-ins"
              << std::endl;

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
