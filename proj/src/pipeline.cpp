#include "fluxskel/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

namespace fluxskel {

RoundTrip round_trip(const BinaryMap& skeleton, ContextRadius r, const RecoveryParams& params, MatchTolerance tol,
                     const std::optional<PerturbSpec>& perturb) {
    FluxField flux = compute_context_flux(skeleton, r);
    if (perturb) flux = perturb_flux(flux, *perturb);
    RoundTrip out;
    out.recovered = recover_skeleton(flux, params);
    out.counts = match_with_tolerance(out.recovered, skeleton, tol);
    out.f_measure = out.counts.f_measure();
    return out;
}

DemoResult run_demo(const DemoConfig& config) {
    config.recovery.validate();
    if (config.timing_repeats < 1) throw Error(Errc::invalid_argument, "timing repeats must be >= 1");

    DemoResult result;
    result.spec = random_shape_spec(config.kind, config.dims, config.seed);
    const Shape shape = make_shape(result.spec);
    FluxField flux = compute_context_flux(shape.skeleton, config.r);
    if (config.sigma > 0.0) {
        PerturbSpec noise;
        noise.sigma = config.sigma;
        noise.seed = config.seed;
        flux = perturb_flux(flux, noise);
    }

    using Clock = std::chrono::steady_clock;
    std::vector<double> times;
    BinaryMap recovered;
    for (int i = 0; i < config.timing_repeats; ++i) {
        const auto t0 = Clock::now();
        recovered = recover_skeleton(flux, config.recovery);
        const auto t1 = Clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    result.recover_ms_median = times[times.size() / 2];
    result.recover_ms_min = times.front();

    result.skeleton_pixels = count_true(shape.skeleton);
    result.recovered_pixels = count_true(recovered);
    result.counts = match_with_tolerance(recovered, shape.skeleton, config.tol);
    result.f_measure = result.counts.f_measure();
    return result;
}

}  // namespace fluxskel
