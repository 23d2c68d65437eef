#pragma once

#include <cstdint>
#include <optional>

#include "fluxskel/eval.hpp"
#include "fluxskel/fluxgen.hpp"
#include "fluxskel/recover.hpp"
#include "fluxskel/synth.hpp"

namespace fluxskel {

/// skeleton -> ground-truth flux (radius r) -> optional perturbation -> recovery
/// -> F-measure of the recovered map against the skeleton.
struct RoundTrip {
    BinaryMap recovered;
    MatchCounts counts;
    double f_measure = 0.0;
};

RoundTrip round_trip(const BinaryMap& skeleton, ContextRadius r, const RecoveryParams& params,
                     MatchTolerance tol, const std::optional<PerturbSpec>& perturb = std::nullopt);

struct DemoConfig {
    GridDims dims{300, 200};
    ShapeKind kind = ShapeKind::polyline;
    std::uint64_t seed = 1;
    double sigma = 0.0;
    ContextRadius r;
    RecoveryParams recovery;
    MatchTolerance tol;
    int timing_repeats = 11;
};

struct DemoResult {
    ShapeSpec spec;
    std::size_t skeleton_pixels = 0;
    std::size_t recovered_pixels = 0;
    MatchCounts counts;
    double f_measure = 0.0;
    double recover_ms_median = 0.0;
    double recover_ms_min = 0.0;
};

/// Synthetic end-to-end run; recovery is timed over timing_repeats runs.
DemoResult run_demo(const DemoConfig& config);

}  // namespace fluxskel
