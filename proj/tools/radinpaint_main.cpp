#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "radinpaint/codec.hpp"
#include "radinpaint/engine.hpp"
#include "radinpaint/experiment.hpp"
#include "radinpaint/metrics.hpp"

using namespace radinpaint;

namespace {

struct InpaintArgs {
    std::string image, mask, out;
    std::string method = "grnn";
    std::string kernel2d = "additive";
    int radius = 5;
    double sigma = 2.0;
    double gamma = 100.0;
    double bandwidth = 5.0;
    std::size_t train_cap = 4000;
    bool no_progressive = false;
};

struct EvaluateArgs {
    std::string original, test;
};

struct SweepArgs {
    std::string image, spec_text, csv, svg;
    std::vector<std::string> methods = {"grnn"};
    std::vector<int> radii = {3, 5, 7, 9, 11, 13};
    std::string kernel2d = "additive";
    double sigma = 2.0;
    double gamma = 100.0;
    double bandwidth = 5.0;
    std::size_t train_cap = 4000;
    bool no_progressive = false;
    bool stable_output = false;
};

struct MaskGenArgs {
    std::string spec_text, out;
    int width = 0, height = 0;
};

const CLI::Validator OddRadius(
    [](std::string& s) -> std::string {
        int v = 0;
        try {
            v = std::stoi(s);
        } catch (...) {
            return "radius must be an odd integer >= 3";
        }
        if (v < 3 || v % 2 == 0) return "radius must be an odd integer >= 3";
        return {};
    },
    "ODD>=3");

KernelKind parse_kernel2d(const std::string& name) {
    return name == "rbf2d" ? KernelKind::Rbf2d : KernelKind::Additive2d;
}

// Inline text when it contains '=', otherwise a config file path.
MaskSpec load_mask_spec(const std::string& text) {
    if (text.find('=') != std::string::npos) return parse_mask_spec(text);
    std::ifstream in(text, std::ios::binary);
    if (!in) throw std::invalid_argument("mask spec file not found: " + text);
    std::ostringstream content;
    content << in.rdbuf();
    return parse_mask_spec(content.str());
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

void write_text_atomic(const std::string& path, const std::string& text) {
    write_file_atomic(path, {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

RegressorConfig make_config(Method m, int radius, double sigma, double gamma, double bandwidth,
                            KernelKind kernel2d, std::size_t train_cap, bool no_progressive) {
    RegressorConfig cfg;
    cfg.radius = radius;
    cfg.progressive = !no_progressive;
    if (m == Method::Grnn) {
        cfg.method = GrnnConfig{sigma};
        return cfg;
    }
    LssvmConfig ls;
    ls.gamma = gamma;
    ls.train_cap = train_cap;
    switch (m) {
        case Method::Rd: ls.mode = LssvmMode::Rd; break;
        case Method::Cd: ls.mode = LssvmMode::Cd; break;
        case Method::Rc: ls.mode = LssvmMode::Rc; break;
        default: ls.mode = LssvmMode::TwoKernel; break;
    }
    ls.kernel = m == Method::Lssvm2k ? Kernel{kernel2d, bandwidth, bandwidth}
                                     : Kernel{KernelKind::Rbf1d, bandwidth, bandwidth};
    cfg.method = ls;
    return cfg;
}

int run_inpaint(const InpaintArgs& a) {
    const GrayImage img = load_image_file(a.image);
    const DamageMask mask = mask_from_image(load_image_file(a.mask));
    const Method m = parse_method(a.method);
    const RegressorConfig cfg = make_config(m, a.radius, a.sigma, a.gamma, a.bandwidth,
                                            parse_kernel2d(a.kernel2d), a.train_cap,
                                            a.no_progressive);
    const InpaintReport report = inpaint(img, mask, cfg);
    save_image_file(report.output, a.out);

    printf("regions=%zu", report.regions.size());
    if (m == Method::Grnn && !report.regions.empty()) {
        std::string bands;
        for (const RegionStat& stat : report.regions) {
            if (!bands.empty()) bands += ',';
            bands += std::to_string(stat.band);
        }
        printf(" bands=%s", bands.c_str());
    }
    if (!report.fallback.empty()) printf(" fallback=%zu", report.fallback.size());
    printf(" wall_ms=%lld\n", static_cast<long long>(report.wall_ms));
    return 0;
}

int run_evaluate(const EvaluateArgs& a) {
    const GrayImage original = load_image_file(a.original);
    const GrayImage test = load_image_file(a.test);
    const double m = mse(original, test);
    const double p = psnr(original, test);
    if (std::isinf(p))
        printf("psnr_db=inf mse=%.4f\n", m);
    else
        printf("psnr_db=%.4f mse=%.4f\n", p, m);
    return 0;
}

int run_sweep(const SweepArgs& a, const MaskSpec& spec, const std::vector<Method>& methods) {
    const GrayImage img = load_image_file(a.image);
    const DamageMask mask = generate_mask(spec, img.width, img.height);

    SweepParams params;
    params.methods = methods;
    params.radii = a.radii;
    params.sigma = a.sigma;
    params.gamma = a.gamma;
    params.bandwidth = a.bandwidth;
    params.kernel2d = parse_kernel2d(a.kernel2d);
    params.train_cap = a.train_cap;
    params.progressive = !a.no_progressive;
    params.stable_output = a.stable_output;
    params.image_id = stem_of(a.image);
    params.mask_id = mask_spec_id(spec);

    const std::vector<SweepRecord> records = radius_sweep(img, mask, params);
    write_text_atomic(a.csv, emit_csv(records));
    if (!a.svg.empty()) {
        std::vector<SweepRecord> grnn_records;
        for (const SweepRecord& rec : records)
            if (rec.method == "GRNN") grnn_records.push_back(rec);
        if (grnn_records.empty())
            throw std::runtime_error("sweep: --svg needs grnn among the methods");
        write_text_atomic(a.svg, emit_bar_svg(grnn_records));
    }
    return 0;
}

int run_maskgen(const MaskGenArgs& a, const MaskSpec& spec) {
    const DamageMask mask = generate_mask(spec, a.width, a.height);
    GrayImage img = GrayImage::filled(a.width, a.height, 0);
    for (int r = 0; r < a.height; ++r)
        for (int c = 0; c < a.width; ++c) img.at(r, c) = mask.known(r, c) ? 255 : 0;
    save_image_file(img, a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial-band grayscale image inpainting toolkit"};
    app.failure_message([](const CLI::App*, const CLI::Error& e) {
        return std::string("error: ") + e.what() + "\n";
    });
    int threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (0 = library default)")
        ->capture_default_str();
    app.require_subcommand(1);

    InpaintArgs ia;
    CLI::App* inp = app.add_subcommand("inpaint", "Fill the damaged pixels of an image");
    inp->add_option("--image", ia.image, "Input image (PGM or PNG)")
        ->required()
        ->check(CLI::ExistingFile);
    inp->add_option("--mask", ia.mask, "Mask image; black pixels are damaged")
        ->required()
        ->check(CLI::ExistingFile);
    inp->add_option("--method", ia.method, "Regressor")
        ->check(CLI::IsMember({"grnn", "rd", "cd", "rc", "lssvm2k"}))
        ->capture_default_str();
    inp->add_option("--radius", ia.radius, "Band diameter for grnn")
        ->check(OddRadius)
        ->capture_default_str();
    inp->add_option("--sigma", ia.sigma, "grnn spread")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    inp->add_option("--gamma", ia.gamma, "LS-SVM regularization")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    inp->add_option("--bandwidth", ia.bandwidth, "Kernel bandwidth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    inp->add_option("--kernel2d", ia.kernel2d, "lssvm2k kernel")
        ->check(CLI::IsMember({"additive", "rbf2d"}))
        ->capture_default_str();
    inp->add_option("--train-cap", ia.train_cap, "lssvm2k training pixel cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    inp->add_flag("--no-progressive", ia.no_progressive,
                  "Do not reuse filled pixels as training data");
    inp->add_option("--out", ia.out, "Output image path")->required();

    EvaluateArgs ea;
    CLI::App* eva = app.add_subcommand("evaluate", "PSNR/MSE of a test image against an original");
    eva->add_option("--original", ea.original, "Pristine image")
        ->required()
        ->check(CLI::ExistingFile);
    eva->add_option("--test", ea.test, "Image to score")->required()->check(CLI::ExistingFile);

    SweepArgs sa;
    CLI::App* swp = app.add_subcommand("sweep", "Method/radius comparison on a generated mask");
    swp->add_option("--image", sa.image, "Input image (PGM or PNG)")
        ->required()
        ->check(CLI::ExistingFile);
    swp->add_option("--mask-spec", sa.spec_text,
                    "Mask spec, inline key=value pairs or a config file path")
        ->required();
    swp->add_option("--methods", sa.methods, "Comma-separated methods")
        ->delimiter(',')
        ->check(CLI::IsMember({"grnn", "rd", "cd", "rc", "lssvm2k"}))
        ->capture_default_str();
    swp->add_option("--radii", sa.radii, "Comma-separated grnn radii")
        ->delimiter(',')
        ->check(OddRadius)
        ->capture_default_str();
    swp->add_option("--sigma", sa.sigma, "grnn spread")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    swp->add_option("--gamma", sa.gamma, "LS-SVM regularization")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    swp->add_option("--bandwidth", sa.bandwidth, "Kernel bandwidth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    swp->add_option("--kernel2d", sa.kernel2d, "lssvm2k kernel")
        ->check(CLI::IsMember({"additive", "rbf2d"}))
        ->capture_default_str();
    swp->add_option("--train-cap", sa.train_cap, "lssvm2k training pixel cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    swp->add_flag("--no-progressive", sa.no_progressive,
                  "Do not reuse filled pixels as training data");
    swp->add_flag("--stable-output", sa.stable_output,
                  "Zero the wall_ms column so reruns are byte-identical");
    swp->add_option("--csv", sa.csv, "Result table path")->required();
    swp->add_option("--svg", sa.svg, "Optional grouped-bar chart path");

    MaskGenArgs ga;
    CLI::App* gen = app.add_subcommand("mask-gen", "Generate a seeded damage mask");
    gen->add_option("--spec", ga.spec_text,
                    "Mask spec, inline key=value pairs or a config file path")
        ->required();
    gen->add_option("--width", ga.width, "Mask width")->required()->check(CLI::PositiveNumber);
    gen->add_option("--height", ga.height, "Mask height")->required()->check(CLI::PositiveNumber);
    gen->add_option("--out", ga.out, "Output PGM path (0 = damaged, 255 = known)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    MaskSpec spec;
    std::vector<Method> methods;
    try {
        if (swp->parsed()) {
            spec = load_mask_spec(sa.spec_text);
            for (const std::string& name : sa.methods) methods.push_back(parse_method(name));
        }
        if (gen->parsed()) spec = load_mask_spec(ga.spec_text);
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (inp->parsed()) return run_inpaint(ia);
        if (eva->parsed()) return run_evaluate(ea);
        if (swp->parsed()) return run_sweep(sa, spec, methods);
        return run_maskgen(ga, spec);
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
