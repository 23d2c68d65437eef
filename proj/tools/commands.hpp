#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fluxskel/binflux.hpp"
#include "fluxskel/pipeline.hpp"

namespace fluxskel::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

enum class Format { json, csv };

struct GenFluxArgs {
    fs::path skeleton;
    fs::path out;
    int r = ContextRadius::kDefault;
};

struct RecoverArgs {
    fs::path flux;
    fs::path out;
    RecoveryParams params;
};

struct EvalArgs {
    fs::path pred;
    fs::path gt;
    std::optional<fs::path> confidence;
    std::optional<fs::path> out;
    double rho = 0.0075;
    int thresholds = 99;
    Format format = Format::json;
};

struct SkeletonizeArgs {
    fs::path mask;
    fs::path out;
    AofParams params;
};

struct PerturbArgs {
    fs::path flux;
    fs::path out;
    PerturbSpec spec;
};

struct SweepArgs {
    fs::path skeleton;
    std::optional<fs::path> out;
    std::vector<int> radii{3, 5, 7, 9, 11};
    RecoveryParams params;
    double rho = 0.0075;
    Format format = Format::json;
};

struct DemoArgs {
    DemoConfig config;
    std::string shape = "polyline";
};

// Single-file forms. Each returns the JSON summary for one input; the text
// printed to stdout is this summary unless a command says otherwise.
Json gen_flux(const GenFluxArgs& args);
Json recover(const RecoverArgs& args);
Json skeletonize(const SkeletonizeArgs& args);
Json perturb(const PerturbArgs& args);
Json demo(const DemoArgs& args);

/// Eval and sweep can print CSV, so they return the rendered text.
std::string eval(const EvalArgs& args, Json* summary = nullptr);
std::string sweep(const SweepArgs& args, Json* summary = nullptr);

struct BatchResult {
    Json summary;
    bool all_ok = true;
};

// Directory forms: every regular file with the expected extension in the
// input directory is processed on a worker pool. Failures are collected per
// file; the summary lists files sorted by name.
BatchResult gen_flux_batch(const GenFluxArgs& args, int threads);
BatchResult recover_batch(const RecoverArgs& args, int threads);
BatchResult skeletonize_batch(const SkeletonizeArgs& args, int threads);
BatchResult perturb_batch(const PerturbArgs& args, int threads);
BatchResult eval_batch(const EvalArgs& args, int threads);
BatchResult sweep_batch(const SweepArgs& args, int threads);

/// --threads, else FLUXSKEL_THREADS, else the hardware concurrency.
int resolve_threads(int requested);

}  // namespace fluxskel::cli
