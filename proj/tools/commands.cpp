#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

#include "fluxskel/simd.hpp"

namespace fluxskel::cli {

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open " + path.string());
    out << text;
    if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

Json dims_json(const GridDims& d) { return Json{{"width", d.width}, {"height", d.height}}; }

std::vector<fs::path> list_inputs(const fs::path& dir, const std::string& ext) {
    if (!fs::is_directory(dir)) throw Error(Errc::file_not_found, dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ext) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

void prepare_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw Error(Errc::io_error, "cannot create directory " + dir.string());
}

/// Runs job(i) for i in [0, n) on up to `threads` workers. Each slot of the
/// result holds the job's JSON or an error entry.
BatchResult run_batch(const std::string& command, const std::vector<fs::path>& inputs, int threads,
                      const std::function<Json(const fs::path&)>& job) {
    std::vector<Json> entries(inputs.size());
    std::vector<char> ok(inputs.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) {
            Json entry{{"file", inputs[i].filename().string()}};
            try {
                Json result = job(inputs[i]);
                entry["status"] = "ok";
                for (auto& [k, v] : result.items()) entry[k] = v;
                ok[i] = 1;
            } catch (const std::exception& e) {
                entry["status"] = "error";
                entry["error"] = e.what();
            }
            entries[i] = std::move(entry);
        }
    };
    const auto n = static_cast<std::size_t>(std::max(1, threads));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(n, inputs.size()); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    BatchResult out;
    Json files = Json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!ok[i]) ++failed;
        files.push_back(std::move(entries[i]));
    }
    out.all_ok = failed == 0;
    out.summary = Json{{"command", command},
                       {"processed", inputs.size()},
                       {"succeeded", inputs.size() - failed},
                       {"failed", failed},
                       {"files", std::move(files)}};
    return out;
}

fs::path with_ext(const fs::path& dir, const fs::path& input, const char* ext) {
    return dir / input.filename().replace_extension(ext);
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FLUXSKEL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

Json gen_flux(const GenFluxArgs& args) {
    const ContextRadius r(args.r);
    const BinaryMap skel = read_binary_map(args.skeleton);
    const RegionPartition part = partition_regions(skel, r);
    write_flux(compute_context_flux(skel, r), args.out);
    Json j = dims_json(skel.dims());
    j["r"] = r.value();
    j["skeleton"] = part.skeleton_count;
    j["context"] = part.context_count;
    j["background"] = part.background_count;
    j["out"] = args.out.string();
    return j;
}

Json recover(const RecoverArgs& args) {
    args.params.validate();
    const FluxField flux = read_flux(args.flux);
    const BinaryMap skel = recover_skeleton(flux, args.params);
    write_binary_map(skel, args.out);
    Json j = dims_json(flux.dims());
    j["skeleton_pixels"] = count_true(skel);
    j["out"] = args.out.string();
    return j;
}

Json skeletonize(const SkeletonizeArgs& args) {
    args.params.validate();
    const BinaryMap mask = read_binary_map(args.mask);
    const BinaryMap skel = skeletonize_binary(mask, args.params);
    write_binary_map(skel, args.out);
    Json j = dims_json(mask.dims());
    j["object_pixels"] = count_true(mask);
    j["skeleton_pixels"] = count_true(skel);
    j["out"] = args.out.string();
    return j;
}

Json perturb(const PerturbArgs& args) {
    args.spec.validate();
    const FluxField flux = read_flux(args.flux);
    write_flux(perturb_flux(flux, args.spec), args.out);
    Json j = dims_json(flux.dims());
    j["sigma"] = args.spec.sigma;
    j["seed"] = args.spec.seed;
    j["out"] = args.out.string();
    return j;
}

std::string eval(const EvalArgs& args, Json* summary) {
    const MatchTolerance tol(args.rho);
    if (args.thresholds < 1) throw Error(Errc::invalid_argument, "thresholds must be >= 1");
    const BinaryMap pred = read_binary_map(args.pred);
    const BinaryMap gt = read_binary_map(args.gt);
    EvalReport report;
    if (args.confidence) {
        const FluxField flux = read_flux(*args.confidence);
        if (!(flux.dims() == pred.dims())) throw Error(Errc::dimension_mismatch, "confidence vs prediction");
        report = pr_curve(confidence_map(flux, pred), gt, tol, args.thresholds);
    } else {
        report = binary_report(pred, gt, tol);
    }
    std::string text = args.format == Format::csv ? report_to_csv(report) : report_to_json(report) + "\n";
    if (args.out) write_text(*args.out, text);
    if (summary) {
        *summary = Json{{"precision", report.best.precision},
                        {"recall", report.best.recall},
                        {"f", report.best_f},
                        {"threshold", report.best.threshold}};
    }
    return text;
}

std::string sweep(const SweepArgs& args, Json* summary) {
    args.params.validate();
    const MatchTolerance tol(args.rho);
    const BinaryMap skel = read_binary_map(args.skeleton);
    const auto rows = sweep_context_radius(skel, args.radii, args.params, tol);
    std::string text = args.format == Format::csv ? sweep_to_csv(rows) : sweep_to_json(rows) + "\n";
    if (args.out) write_text(*args.out, text);
    if (summary) {
        double lo = 1.0, hi = 0.0;
        for (const auto& row : rows) {
            lo = std::min(lo, row.f_measure);
            hi = std::max(hi, row.f_measure);
        }
        *summary = Json{{"f_min", lo}, {"f_max", hi}, {"f_spread", hi - lo}};
    }
    return text;
}

Json demo(const DemoArgs& args) {
    const auto kind = parse_shape_kind(args.shape);
    if (!kind) throw Error(Errc::invalid_argument, "unknown shape kind '" + args.shape + "'");
    DemoConfig config = args.config;
    config.kind = *kind;
    const DemoResult r = run_demo(config);
    Json j{{"shape", std::string(shape_kind_name(config.kind))},
           {"width", config.dims.width},
           {"height", config.dims.height},
           {"seed", config.seed},
           {"sigma", config.sigma},
           {"r", config.r.value()},
           {"lambda", config.recovery.lambda},
           {"k1", config.recovery.k1},
           {"k2", config.recovery.k2},
           {"rho", config.tol.rho},
           {"skeleton_pixels", r.skeleton_pixels},
           {"recovered_pixels", r.recovered_pixels},
           {"precision", r.counts.precision()},
           {"recall", r.counts.recall()},
           {"f", r.f_measure},
           {"recover_ms", r.recover_ms_median},
           {"recover_ms_min", r.recover_ms_min},
           {"timing_repeats", config.timing_repeats},
           {"simd", simd::active().name}};
    return j;
}

BatchResult gen_flux_batch(const GenFluxArgs& args, int threads) {
    static_cast<void>(ContextRadius(args.r));
    const auto inputs = list_inputs(args.skeleton, ".pgm");
    prepare_out_dir(args.out);
    return run_batch("gen-flux", inputs, threads, [&](const fs::path& in) {
        GenFluxArgs one = args;
        one.skeleton = in;
        one.out = with_ext(args.out, in, ".flx");
        return gen_flux(one);
    });
}

BatchResult recover_batch(const RecoverArgs& args, int threads) {
    args.params.validate();
    const auto inputs = list_inputs(args.flux, ".flx");
    prepare_out_dir(args.out);
    return run_batch("recover", inputs, threads, [&](const fs::path& in) {
        RecoverArgs one = args;
        one.flux = in;
        one.out = with_ext(args.out, in, ".pgm");
        return recover(one);
    });
}

BatchResult skeletonize_batch(const SkeletonizeArgs& args, int threads) {
    args.params.validate();
    const auto inputs = list_inputs(args.mask, ".pgm");
    prepare_out_dir(args.out);
    return run_batch("skeletonize", inputs, threads, [&](const fs::path& in) {
        SkeletonizeArgs one = args;
        one.mask = in;
        one.out = with_ext(args.out, in, ".pgm");
        return skeletonize(one);
    });
}

BatchResult perturb_batch(const PerturbArgs& args, int threads) {
    args.spec.validate();
    const auto inputs = list_inputs(args.flux, ".flx");
    prepare_out_dir(args.out);
    return run_batch("perturb", inputs, threads, [&](const fs::path& in) {
        PerturbArgs one = args;
        one.flux = in;
        one.out = with_ext(args.out, in, ".flx");
        return perturb(one);
    });
}

BatchResult eval_batch(const EvalArgs& args, int threads) {
    static_cast<void>(MatchTolerance(args.rho));
    const auto inputs = list_inputs(args.pred, ".pgm");
    if (!fs::is_directory(args.gt)) throw Error(Errc::file_not_found, args.gt.string());
    if (args.confidence && !fs::is_directory(*args.confidence)) {
        throw Error(Errc::file_not_found, args.confidence->string());
    }
    if (args.out) prepare_out_dir(*args.out);
    const char* ext = args.format == Format::csv ? ".csv" : ".json";
    BatchResult result = run_batch("eval", inputs, threads, [&](const fs::path& in) {
        EvalArgs one = args;
        one.pred = in;
        one.gt = args.gt / in.filename();
        if (args.confidence) one.confidence = with_ext(*args.confidence, in, ".flx");
        one.out = args.out ? std::optional<fs::path>(with_ext(*args.out, in, ext)) : std::nullopt;
        Json summary;
        eval(one, &summary);
        return summary;
    });
    double sum_f = 0.0;
    std::size_t n = 0;
    for (const auto& f : result.summary["files"]) {
        if (f["status"] == "ok") {
            sum_f += f["f"].get<double>();
            ++n;
        }
    }
    result.summary["mean_f"] = n ? sum_f / static_cast<double>(n) : 0.0;
    return result;
}

BatchResult sweep_batch(const SweepArgs& args, int threads) {
    args.params.validate();
    static_cast<void>(MatchTolerance(args.rho));
    const auto inputs = list_inputs(args.skeleton, ".pgm");
    if (args.out) prepare_out_dir(*args.out);
    const char* ext = args.format == Format::csv ? ".csv" : ".json";
    return run_batch("sweep", inputs, threads, [&](const fs::path& in) {
        SweepArgs one = args;
        one.skeleton = in;
        one.out = args.out ? std::optional<fs::path>(with_ext(*args.out, in, ext)) : std::nullopt;
        Json summary;
        sweep(one, &summary);
        return summary;
    });
}

}  // namespace fluxskel::cli
