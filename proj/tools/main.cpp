#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "freqtrig/error.hpp"

using namespace freqtrig;
using namespace freqtrig::cli;

namespace {

// One line of JSON on stderr so scripts can parse failures.
int fail(int code, const std::string& kind, const std::string& message) {
    Json err;
    err["error"] = kind;
    err["message"] = message;
    err["exit_code"] = code;
    std::cerr << err.dump() << '\n';
    return code;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return kUsage;
        case ErrorKind::Io: return kIo;
        case ErrorKind::InvalidInput:
        case ErrorKind::Parse: return kValidation;
    }
    return kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> invocation(argv + 1, argv + argc);

    CLI::App app{"Frequency-domain clean-label trigger toolkit"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Per-frequency statistics of one class");
    analyze->add_option("--dataset", an.dataset, "CIFAR-10 batch file or PNG class tree")->required();
    analyze->add_option("--format", an.format, "auto, cifar10 or png")
        ->check(CLI::IsMember({"auto", "cifar10", "png"}));
    analyze->add_option("--class", an.target_class, "Class index or name")->required();
    analyze->add_option("--filter", an.filter, "Screening filter, e.g. gaussian:3:1, mean:3, median:3, svd:8");
    analyze->add_option("--out", an.out, "Statistics JSON")->required();

    GenTriggerArgs gt;
    auto* gen = app.add_subcommand("gen-trigger", "Generate a frequency trigger for one class");
    gen->add_option("--dataset", gt.dataset)->required();
    gen->add_option("--class", gt.target_class)->required();
    gen->add_option("--top-n", gt.top_n, "Trigger frequencies");
    gen->add_option("--pool", gt.pool, "Filter-robust candidate pool");
    gen->add_option("--delta", gt.delta, "Per-channel offset y,u,v")->delimiter(',')->expected(3);
    gen->add_option("--epsilon", gt.epsilon, "Stealth audit bound");
    gen->add_option("--seed", gt.seed, "Recorded for provenance; generation is deterministic");
    gen->add_option("--out", gt.out, "Trigger JSON")->required();

    PoisonArgs po;
    auto* poison = app.add_subcommand("poison", "Inject a trigger into part of one class");
    poison->add_option("--dataset", po.dataset)->required();
    poison->add_option("--class", po.target_class)->required();
    poison->add_option("--rate", po.rate, "Fraction of the class to poison");
    poison->add_option("--trigger", po.trigger)->required();
    poison->add_option("--seed", po.seed);
    poison->add_option("--out", po.out, "Output directory")->required();
    poison->add_option("--manifest", po.manifest, "Manifest JSON")->required();

    QualityArgs qa;
    auto* quality = app.add_subcommand("quality", "PSNR/SSIM between aligned datasets");
    quality->add_option("--clean", qa.clean)->required();
    quality->add_option("--poisoned", qa.poisoned)->required();
    quality->add_option("--out", qa.out, "Report JSON")->required();
    quality->add_option("--csv", qa.csv, "Optional per-image CSV");

    FilterArgs fa;
    auto* filter = app.add_subcommand("filter", "Filter an image or a dataset");
    filter->add_option("--in", fa.in, "PNG image, CIFAR-10 batch file or PNG class tree")->required();
    filter->add_option("--type", fa.type)->check(CLI::IsMember({"gaussian", "mean", "median", "svd"}));
    filter->add_option("--kernel", fa.kernel);
    filter->add_option("--sigma", fa.sigma);
    filter->add_option("--rank", fa.rank, "SVD rank, 0 for the default");
    filter->add_option("--out", fa.out)->required();

    ProbeArgs pr;
    auto* probe = app.add_subcommand("probe", "Linear separability of clean vs poisoned spectra");
    probe->add_option("--clean", pr.clean)->required();
    probe->add_option("--poisoned", pr.poisoned)->required();
    probe->add_option("--split", pr.split);
    probe->add_option("--seed", pr.seed);
    probe->add_option("--out", pr.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kUsage, "usage", e.what());
    }

    try {
        if (*analyze) return run_analyze(an, invocation);
        if (*gen) return run_gen_trigger(gt, invocation);
        if (*poison) return run_poison(po, invocation);
        if (*quality) return run_quality(qa, invocation);
        if (*filter) return run_filter(fa, invocation);
        if (*probe) return run_probe(pr, invocation);
    } catch (const Error& e) {
        return fail(exit_code_for(e.kind()), to_string(e.kind()), e.what());
    } catch (const Json::exception& e) {
        return fail(kValidation, "parse", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(kIo, "io", e.what());
    } catch (const std::exception& e) {
        return fail(kValidation, "internal", e.what());
    }
    return fail(kUsage, "usage", "no subcommand");
}
