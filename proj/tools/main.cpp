// fluxskel command-line tool.
//
// JSON goes to stdout, diagnostics to stderr. Exit status: 0 on success,
// 1 on an internal error, 2 on a usage or input error (including any failed
// file in a directory batch).

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fluxskel/simd.hpp"

using namespace fluxskel;
using namespace fluxskel::cli;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

void add_format(CLI::App* sub, std::string& format) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void add_recovery(CLI::App* sub, RecoveryParams& p) {
    sub->add_option("--lambda", p.lambda, "Flux magnitude threshold")->capture_default_str();
    sub->add_option("--k1", p.k1, "Dilation radius")->capture_default_str();
    sub->add_option("--k2", p.k2, "Erosion radius")->capture_default_str();
}

Format to_format(const std::string& s) { return s == "csv" ? Format::csv : Format::json; }

int emit(const Json& j) {
    std::cout << j.dump(2) << '\n';
    return 0;
}

int emit_batch(const BatchResult& b) {
    std::cout << b.summary.dump(2) << '\n';
    if (!b.all_ok) {
        for (const auto& f : b.summary["files"]) {
            if (f["status"] != "ok") {
                std::cerr << "error: " << f["file"].get<std::string>() << ": " << f["error"].get<std::string>() << '\n';
            }
        }
        return kExitInput;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Context flux skeleton tools"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string simd_name;
    int threads = 0;
    app.add_option("--simd", simd_name, "Kernel set: scalar or avx2 (default: best available)");
    app.add_option("--threads", threads, "Worker threads for directory batches")->check(CLI::NonNegativeNumber);

    GenFluxArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-flux", "Ground-truth context flux from a skeleton image");
    gen_cmd->add_option("skeleton", gen.skeleton, "Skeleton PGM, or a directory of them")->required();
    gen_cmd->add_option("--out,-o", gen.out, "Output FLX1 file or directory")->required();
    gen_cmd->add_option("--r", gen.r, "Context radius")->capture_default_str();

    RecoverArgs rec;
    auto* rec_cmd = app.add_subcommand("recover", "Skeleton recovery from a flux field");
    rec_cmd->add_option("flux", rec.flux, "FLX1 file, or a directory of them")->required();
    rec_cmd->add_option("--out,-o", rec.out, "Output PGM file or directory")->required();
    add_recovery(rec_cmd, rec.params);

    EvalArgs ev;
    std::string ev_format = "json";
    std::string ev_conf, ev_out;
    auto* ev_cmd = app.add_subcommand("eval", "Precision, recall and F-measure against ground truth");
    ev_cmd->add_option("pred", ev.pred, "Predicted skeleton PGM, or a directory")->required();
    ev_cmd->add_option("gt", ev.gt, "Ground-truth skeleton PGM, or a directory")->required();
    ev_cmd->add_option("--confidence", ev_conf, "Flux FLX1 whose magnitude gives per-pixel confidence");
    ev_cmd->add_option("--rho", ev.rho, "Match tolerance as a fraction of the image diagonal")->capture_default_str();
    ev_cmd->add_option("--thresholds", ev.thresholds, "Number of PR thresholds")->capture_default_str();
    ev_cmd->add_option("--out,-o", ev_out, "Also write the report here");
    add_format(ev_cmd, ev_format);

    SkeletonizeArgs sk;
    auto* sk_cmd = app.add_subcommand("skeletonize", "Average-outward-flux skeleton of a binary mask");
    sk_cmd->add_option("mask", sk.mask, "Mask PGM, or a directory of them")->required();
    sk_cmd->add_option("--out,-o", sk.out, "Output PGM file or directory")->required();
    sk_cmd->add_option("--tau", sk.params.tau, "Flux threshold")->capture_default_str();
    sk_cmd->add_option("--min-area", sk.params.min_object_area, "Smallest object kept")->capture_default_str();

    PerturbArgs pt;
    auto* pt_cmd = app.add_subcommand("perturb", "Add synthetic noise to a flux field");
    pt_cmd->add_option("flux", pt.flux, "FLX1 file, or a directory of them")->required();
    pt_cmd->add_option("--out,-o", pt.out, "Output FLX1 file or directory")->required();
    pt_cmd->add_option("--sigma", pt.spec.sigma, "Per-component Gaussian noise")->capture_default_str();
    pt_cmd->add_option("--seed", pt.spec.seed, "Random seed")->capture_default_str();
    pt_cmd->add_option("--patches", pt.spec.dropout_patches, "Number of zeroed patches")->capture_default_str();
    pt_cmd->add_option("--patch-size", pt.spec.patch_size, "Patch side in pixels")->capture_default_str();
    pt_cmd->add_option("--jitter", pt.spec.angle_jitter_deg, "Rotation jitter std, degrees")->capture_default_str();
    pt_cmd->add_flag("--noise-on-zero", pt.spec.noise_on_zero, "Also add noise where the flux is zero");

    SweepArgs sw;
    std::string sw_format = "json";
    std::string sw_out;
    auto* sw_cmd = app.add_subcommand("sweep", "Round-trip F-measure across context radii");
    sw_cmd->add_option("skeleton", sw.skeleton, "Skeleton PGM, or a directory of them")->required();
    sw_cmd->add_option("--radii", sw.radii, "Comma-separated radii")->delimiter(',')->capture_default_str();
    sw_cmd->add_option("--rho", sw.rho, "Match tolerance")->capture_default_str();
    sw_cmd->add_option("--out,-o", sw_out, "Also write the table here");
    add_recovery(sw_cmd, sw.params);
    add_format(sw_cmd, sw_format);

    DemoArgs dm;
    int dm_r = ContextRadius::kDefault;
    auto* dm_cmd = app.add_subcommand("demo", "Synthetic shape, flux, noise, recovery and scoring in one go");
    dm_cmd->add_option("--shape", dm.shape, "line, polyline, ellipse, rectangle, disk or blob")->capture_default_str();
    dm_cmd->add_option("--width", dm.config.dims.width, "Grid width")->capture_default_str();
    dm_cmd->add_option("--height", dm.config.dims.height, "Grid height")->capture_default_str();
    dm_cmd->add_option("--seed", dm.config.seed, "Random seed")->capture_default_str();
    dm_cmd->add_option("--sigma", dm.config.sigma, "Flux noise")->capture_default_str();
    dm_cmd->add_option("--r", dm_r, "Context radius")->capture_default_str();
    dm_cmd->add_option("--rho", dm.config.tol.rho, "Match tolerance")->capture_default_str();
    dm_cmd->add_option("--repeats", dm.config.timing_repeats, "Timed recovery runs")->capture_default_str();
    add_recovery(dm_cmd, dm.config.recovery);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (!simd_name.empty()) {
            simd::Isa isa{};
            if (!simd::parse_isa(simd_name, isa)) throw Error(Errc::invalid_argument, "unknown kernel set '" + simd_name + "'");
            if (!simd::set_active(isa)) throw Error(Errc::invalid_argument, simd_name + " is not supported on this machine");
        }
        const int workers = resolve_threads(threads);
        namespace fs = std::filesystem;

        if (gen_cmd->parsed()) {
            return fs::is_directory(gen.skeleton) ? emit_batch(gen_flux_batch(gen, workers)) : emit(gen_flux(gen));
        }
        if (rec_cmd->parsed()) {
            return fs::is_directory(rec.flux) ? emit_batch(recover_batch(rec, workers)) : emit(recover(rec));
        }
        if (sk_cmd->parsed()) {
            return fs::is_directory(sk.mask) ? emit_batch(skeletonize_batch(sk, workers)) : emit(skeletonize(sk));
        }
        if (pt_cmd->parsed()) {
            return fs::is_directory(pt.flux) ? emit_batch(perturb_batch(pt, workers)) : emit(perturb(pt));
        }
        if (ev_cmd->parsed()) {
            ev.format = to_format(ev_format);
            if (!ev_conf.empty()) ev.confidence = ev_conf;
            if (!ev_out.empty()) ev.out = ev_out;
            if (fs::is_directory(ev.pred)) return emit_batch(eval_batch(ev, workers));
            std::cout << eval(ev);
            return 0;
        }
        if (sw_cmd->parsed()) {
            sw.format = to_format(sw_format);
            if (!sw_out.empty()) sw.out = sw_out;
            if (fs::is_directory(sw.skeleton)) return emit_batch(sweep_batch(sw, workers));
            std::cout << sweep(sw);
            return 0;
        }
        if (dm_cmd->parsed()) {
            dm.config.r = ContextRadius(dm_r);
            dm.config.dims = GridDims(dm.config.dims.width, dm.config.dims.height);
            dm.config.tol = MatchTolerance(dm.config.tol.rho);
            return emit(demo(dm));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
