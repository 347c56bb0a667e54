#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "freqtrig/dataset.hpp"
#include "freqtrig/error.hpp"
#include "freqtrig/filters.hpp"
#include "freqtrig/inject.hpp"
#include "freqtrig/probe.hpp"
#include "freqtrig/quality.hpp"
#include "freqtrig/stats.hpp"
#include "freqtrig/trigger.hpp"

namespace fs = std::filesystem;

namespace freqtrig::cli {
namespace {

/// Index or name.
int resolve_class(const Dataset& ds, const std::string& text) {
    if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
        const unsigned long idx = std::stoul(text);
        if (idx >= ds.class_count()) throw InvalidArgument("class index " + text + " out of range");
        return static_cast<int>(idx);
    }
    for (std::size_t k = 0; k < ds.class_names.size(); ++k) {
        if (ds.class_names[k] == text) return static_cast<int>(k);
    }
    throw InvalidArgument("unknown class '" + text + "'");
}

std::vector<Image> class_slice(const Dataset& ds, int label) {
    std::vector<Image> out;
    for (std::size_t i : ds.indices_of(label)) out.push_back(ds.images[i]);
    if (out.empty()) throw InvalidInput("class " + std::to_string(label) + " has no images");
    return out;
}

// JSON has no infinity; identical pairs report null.
Json number(double x) {
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json flatten(const std::vector<Grid>& planes) {
    Json arr = Json::array();
    for (const auto& g : planes)
        for (double x : g.values()) arr.push_back(x);
    return arr;
}

// Nothing compared: every summary field is null rather than a fake 0.
Json quality_summary(const QualityReport& q) {
    Json j;
    if (q.rows.empty()) {
        for (const char* key : {"mean_psnr", "mean_ssim", "min_psnr", "min_ssim"}) j[key] = nullptr;
        return j;
    }
    j["mean_psnr"] = number(q.mean_psnr);
    j["mean_ssim"] = number(q.mean_ssim);
    j["min_psnr"] = number(q.min_psnr);
    j["min_ssim"] = number(q.min_ssim);
    return j;
}

/// Indices where two aligned datasets hold different pixels.
std::vector<std::size_t> differing(const Dataset& a, const Dataset& b) {
    if (a.size() != b.size()) {
        throw InvalidInput("datasets differ in size: " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.images[i].same_shape(b.images[i])) throw InvalidInput("image " + std::to_string(i) + " differs in shape");
        if (!(a.images[i] == b.images[i])) out.push_back(i);
    }
    return out;
}

void ensure_parent(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

}  // namespace

Json header(const std::vector<std::string>& invocation) {
    Json h;
    h["version"] = kOutputVersion;
    h["tool"] = std::string(kToolName) + " " + kToolVersion;
    h["invocation"] = invocation;
    return h;
}

int run_analyze(const AnalyzeArgs& a, const std::vector<std::string>& invocation) {
    const Dataset ds = load_dataset(a.dataset);
    if (a.format != "auto" && a.format != to_string(ds.source_format)) {
        throw InvalidArgument(a.dataset + " is " + to_string(ds.source_format) + ", not " + a.format);
    }
    const int label = resolve_class(ds, a.target_class);
    const FilterSpec spec = FilterSpec::parse(a.filter);
    const auto slice = class_slice(ds, label);
    const auto spectra = slice_spectra(slice, [&](const Image& img) { return apply_filter(img, spec); });
    const auto stats = compute_stats(spectra.original, spectra.filtered);

    Json doc = header(invocation);
    doc["dataset"] = a.dataset;
    doc["target_class"] = label;
    doc["filter"] = spec.to_string();
    doc["sample_count"] = stats.sample_count;
    doc["channels"] = stats.channels;
    doc["rows"] = stats.rows;
    doc["cols"] = stats.cols;
    doc["layout"] = "ch,u,v";
    doc["mean"] = flatten(stats.mean);
    doc["std"] = flatten(stats.std_dev);
    doc["cov"] = flatten(stats.cov);
    doc["filter_diff"] = flatten(stats.filter_diff);
    ensure_parent(a.out);
    write_json(doc, a.out);
    std::cout << "analyzed " << stats.sample_count << " images of class " << label << " -> " << a.out << '\n';
    return kOk;
}

int run_gen_trigger(const GenTriggerArgs& a, const std::vector<std::string>& invocation) {
    const Dataset ds = load_dataset(a.dataset);
    const int label = resolve_class(ds, a.target_class);
    TriggerConfig cfg;
    cfg.top_n = a.top_n;
    cfg.candidate_pool = a.pool;
    cfg.delta = a.delta;
    cfg.epsilon = a.epsilon;
    cfg.validate();

    auto generated = generate_trigger(class_slice(ds, label), cfg);
    auto& trigger = generated.trigger;
    trigger.source.dataset = a.dataset;
    trigger.source.target_class = label;

    Json doc = header(invocation);
    const Json body = trigger_to_json(trigger);
    for (const auto& [key, value] : body.items()) doc[key] = value;
    ensure_parent(a.out);
    write_json(doc, a.out);

    for (const auto& e : trigger.entries) {
        std::cout << "frequency (" << e.freq.u << "," << e.freq.v << ") intensity";
        for (double x : e.intensity) std::cout << ' ' << x;
        std::cout << '\n';
    }
    for (const auto& w : generated.warnings) {
        std::cout << "warning: (" << w.freq.u << "," << w.freq.v << ") channel " << w.channel << ": "
                  << w.exceed_fraction * 100.0 << "% of the class lies more than epsilon from I_T\n";
    }
    return kOk;
}

int run_poison(const PoisonArgs& a, const std::vector<std::string>& invocation) {
    const Dataset ds = load_dataset(a.dataset);
    const int label = resolve_class(ds, a.target_class);
    const Json trigger_doc = read_json(a.trigger);
    const FrequencyTrigger trigger = trigger_from_json(trigger_doc);

    const auto result = poison_dataset(ds, label, a.rate, trigger, a.seed);

    // CIFAR input keeps its file name inside the output directory.
    fs::path written = a.out;
    if (ds.source_format == DatasetFormat::Cifar10Binary) {
        fs::create_directories(a.out);
        written = fs::path(a.out) / fs::path(a.dataset).filename();
    }
    save_dataset(result.dataset, written, ds.source_format);

    const auto& m = result.manifest;
    Json doc = header(invocation);
    doc["dataset"] = {{"path", a.dataset}, {"format", to_string(ds.source_format)}, {"class_count", ds.class_count()}};
    doc["output"] = written.string();
    doc["target_class"] = m.target_class;
    doc["rate"] = m.rate;
    doc["seed"] = m.seed;
    doc["trigger"] = trigger_to_json(m.trigger);
    doc["poisoned_indices"] = m.poisoned_indices;
    doc["quality"] = quality_summary(m.quality);
    doc["verify"] = {{"max_deviation", m.max_deviation}};
    ensure_parent(a.manifest);
    write_json(doc, a.manifest);

    std::cout << "poisoned " << m.poisoned_indices.size() << " of " << ds.indices_of(label).size()
              << " images of class " << label << " -> " << written.string() << '\n';
    if (!m.poisoned_indices.empty()) {
        std::cout << "mean PSNR " << m.quality.mean_psnr << " dB, mean SSIM " << m.quality.mean_ssim
                  << ", max trigger deviation " << m.max_deviation << '\n';
    }
    return kOk;
}

int run_quality(const QualityArgs& a, const std::vector<std::string>& invocation) {
    const Dataset clean = load_dataset(a.clean), dirty = load_dataset(a.poisoned);
    // Untouched pairs would contribute infinite PSNR; score the altered ones.
    const auto idx = differing(clean, dirty);
    std::vector<Image> c, d;
    for (std::size_t i : idx) {
        c.push_back(clean.images[i]);
        d.push_back(dirty.images[i]);
    }
    const auto report = batch_quality(c, d, idx);

    Json doc = header(invocation);
    doc["clean"] = a.clean;
    doc["poisoned"] = a.poisoned;
    doc["pairs_total"] = clean.size();
    doc["pairs_compared"] = idx.size();
    doc["quality"] = quality_summary(report);
    ensure_parent(a.out);
    write_json(doc, a.out);

    if (!a.csv.empty()) {
        ensure_parent(a.csv);
        std::ofstream csv(a.csv, std::ios::binary);
        if (!csv) throw IoError("cannot open " + a.csv + " for writing");
        csv.precision(std::numeric_limits<double>::max_digits10);
        csv << "index,psnr,ssim\n";
        for (const auto& row : report.rows) csv << row.index << ',' << row.psnr << ',' << row.ssim << '\n';
        if (!csv) throw IoError("failed writing " + a.csv);
    }
    std::cout << "compared " << idx.size() << " of " << clean.size() << " pairs";
    if (!idx.empty()) std::cout << ": mean PSNR " << report.mean_psnr << " dB, mean SSIM " << report.mean_ssim;
    std::cout << '\n';
    return kOk;
}

int run_filter(const FilterArgs& a, const std::vector<std::string>& invocation) {
    (void)invocation;
    FilterSpec spec;
    spec.type = FilterSpec::parse(a.type).type;
    spec.kernel_size = a.kernel;
    spec.sigma = a.sigma;
    spec.rank = a.rank;
    spec = FilterSpec::parse(spec.to_string());  // same validation as spec strings

    if (fs::is_regular_file(a.in) && fs::path(a.in).extension() == ".png") {
        ensure_parent(a.out);
        write_png(quantized(apply_filter(read_png(a.in), spec)), a.out);
        std::cout << "filtered 1 image with " << spec.to_string() << " -> " << a.out << '\n';
        return kOk;
    }
    Dataset ds = load_dataset(a.in);
    for (auto& img : ds.images) img = apply_filter(img, spec);
    if (ds.source_format == DatasetFormat::Cifar10Binary) ensure_parent(a.out);
    save_dataset(ds, a.out, ds.source_format);
    std::cout << "filtered " << ds.size() << " images with " << spec.to_string() << " -> " << a.out << '\n';
    return kOk;
}

int run_probe(const ProbeArgs& a, const std::vector<std::string>& invocation) {
    const Dataset clean = load_dataset(a.clean), dirty = load_dataset(a.poisoned);
    // Only altered pairs carry signal; with none altered the probe sees two
    // copies of the same set.
    auto idx = differing(clean, dirty);
    if (idx.empty()) {
        idx.resize(clean.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    }
    std::vector<Image> c, d;
    for (std::size_t i : idx) {
        c.push_back(clean.images[i]);
        d.push_back(dirty.images[i]);
    }
    ProbeConfig cfg;
    cfg.split = a.split;
    cfg.seed = a.seed;
    const auto res = train_probe(c, d, cfg);

    Json doc = header(invocation);
    doc["clean"] = a.clean;
    doc["poisoned"] = a.poisoned;
    doc["split"] = a.split;
    doc["seed"] = a.seed;
    doc["accuracy"] = res.accuracy;
    doc["n_train"] = res.n_train;
    doc["n_test"] = res.n_test;
    Json top = Json::array();
    for (const auto& f : res.top_features) top.push_back({{"ch", f.channel}, {"u", f.u}, {"v", f.v}, {"weight", f.weight}});
    doc["top_features"] = top;
    ensure_parent(a.out);
    write_json(doc, a.out);
    std::cout << "held-out accuracy " << res.accuracy << " (" << res.n_train << " train, " << res.n_test
              << " test)\n";
    return kOk;
}

}  // namespace freqtrig::cli
