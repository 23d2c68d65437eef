// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fluxskel/binflux.hpp"
#include "fluxskel/dt.hpp"
#include "fluxskel/eval.hpp"
#include "fluxskel/fluxgen.hpp"
#include "fluxskel/morph.hpp"
#include "fluxskel/pipeline.hpp"
#include "fluxskel/simd.hpp"
#include "fluxskel/synth.hpp"
#include "support/oracles.hpp"

using namespace fluxskel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

const RecoveryParams kRecovery{};  // lambda 0.4, k1 3, k2 4
const MatchTolerance kTol{};       // rho 0.0075

// 1. Round trip on 20 synthetic skeletons.
Outcome round_trip_fidelity() {
    const ShapeKind kinds[] = {ShapeKind::line, ShapeKind::polyline, ShapeKind::ellipse, ShapeKind::blob};
    const GridDims sizes[] = {GridDims(128, 128), GridDims(192, 160), GridDims(256, 256), GridDims(160, 120),
                              GridDims(224, 200)};
    const auto t0 = Clock::now();
    double worst = 1.0, sum = 0.0;
    int n = 0;
    for (ShapeKind k : kinds) {
        for (int i = 0; i < 5; ++i) {
            const auto skel = make_shape(random_shape_spec(k, sizes[i], 1000 + static_cast<std::uint64_t>(i))).skeleton;
            const double f = round_trip(skel, ContextRadius(7), kRecovery, kTol).f_measure;
            worst = std::min(worst, f);
            sum += f;
            ++n;
        }
    }
    const double elapsed = seconds_since(t0);
    const double mean = sum / n;
    return {n == 20 && worst >= 0.90 && mean >= 0.95 && elapsed < 10.0,
            fmt("cases=%d min F=%.4f (>=0.90) mean F=%.4f (>=0.95) time=%.2fs (<10s)", n, worst, mean, elapsed)};
}

// 2. Distance transform against brute force.
Outcome dt_exactness() {
    double dt_time = 0.0;
    int mismatches = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const int w = 1 + static_cast<int>(oracle::hash2(s, 1) % 64);
        const int h = 1 + static_cast<int>(oracle::hash2(s, 2) % 64);
        const double density = 0.001 + 0.2 * static_cast<double>(oracle::hash2(s, 3) % 1000) / 1000.0;
        BinaryMap sites = oracle::random_map(GridDims(w, h), density, s);
        if (count_true(sites) == 0) sites.at(static_cast<int>(s % static_cast<std::uint64_t>(w)), 0) = 1;
        const auto t0 = Clock::now();
        const auto dt = euclidean_dt_with_labels(sites);
        dt_time += seconds_since(t0);
        const auto ref = oracle::brute_edt(sites);
        if (!(dt.squared == ref.squared) || !(dt.nearest == ref.nearest)) ++mismatches;
    }
    return {mismatches == 0 && dt_time < 5.0,
            fmt("maps=200 mismatching=%d dt time=%.3fs (<5s)", mismatches, dt_time)};
}

// 3. Context flux invariants.
Outcome flux_invariants() {
    const ShapeKind kinds[] = {ShapeKind::line, ShapeKind::polyline, ShapeKind::ellipse, ShapeKind::blob,
                               ShapeKind::rectangle};
    double worst_norm = 0.0, worst_dir = 0.0;
    std::size_t bad_zero = 0, bad_reach = 0, context = 0;
    for (int i = 0; i < 10; ++i) {
        const GridDims dims(96 + 8 * i, 80);
        const auto skel = make_shape(random_shape_spec(kinds[i % 5], dims, 2000 + static_cast<std::uint64_t>(i))).skeleton;
        const int r = 7;
        const auto part = partition_regions(skel, ContextRadius(r));
        const FluxField f = compute_context_flux(skel, ContextRadius(r));
        const auto ref = oracle::brute_edt(skel);
        for (int y = 0; y < dims.height; ++y) {
            for (int x = 0; x < dims.width; ++x) {
                const Vec2f v = f.at(x, y);
                if (part.labels.at(x, y) != Region::context) {
                    if (!(v == Vec2f{})) ++bad_zero;
                    continue;
                }
                ++context;
                worst_norm = std::max(worst_norm, std::abs(std::hypot(double(v.x), double(v.y)) - 1.0));
                const Point n = ref.nearest.at(x, y);
                const double dx = n.x - x, dy = n.y - y;
                const double len = std::hypot(dx, dy);
                if (len > r) ++bad_reach;
                worst_dir = std::max({worst_dir, std::abs(v.x - dx / len), std::abs(v.y - dy / len)});
            }
        }
    }
    return {worst_norm <= 1e-6 && worst_dir <= 1e-6 && bad_zero == 0 && bad_reach == 0 && context > 0,
            fmt("shapes=10 context px=%zu max |norm-1|=%.2e max ray error=%.2e nonzero off-context=%zu beyond r=%zu",
                context, worst_norm, worst_dir, bad_zero, bad_reach)};
}

// 4. Class balance and loss.
Outcome balance_and_loss() {
    double worst_balance = 0.0, worst_loss = 0.0;
    int zero_failures = 0, positive_failures = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const GridDims dims(20 + static_cast<int>(s % 40), 16 + static_cast<int>(s % 23));
        BinaryMap skel = oracle::random_map(dims, 0.003 + 0.002 * static_cast<double>(s % 7), s);
        if (count_true(skel) == 0) skel.at(dims.width / 2, dims.height / 2) = 1;
        const ContextRadius r(1 + static_cast<int>(s % 6));
        const auto part = partition_regions(skel, r);
        const ScalarMap w = pixel_weights(part);
        double fg_w = 0.0, bg_w = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (part.labels[i] == Region::background) {
                bg_w = w[i];
            } else {
                fg_w = w[i];
            }
        }
        const double lhs = static_cast<double>(part.context_count + part.skeleton_count) * fg_w;
        const double rhs = static_cast<double>(part.background_count) * bg_w;
        if (part.background_count > 0) worst_balance = std::max(worst_balance, std::abs(lhs - rhs) / std::max(lhs, rhs));

        const FluxField gt = compute_context_flux(skel, r);
        if (weighted_l2_loss(gt, gt, w) != 0.0) ++zero_failures;
        const FluxField pred = oracle::random_flux(dims, 1.0, s + 500);
        const double got = weighted_l2_loss(pred, gt, w);
        const double want = oracle::naive_loss(pred, gt, w, true);
        worst_loss = std::max(worst_loss, std::abs(got - want) / std::abs(want));
        FluxField nudged = gt;
        const std::size_t at = static_cast<std::size_t>(s * 7919) % gt.size();
        nudged.set(at, Vec2f{gt[at].x + 0.25f, gt[at].y});
        if (w[at] > 0.0 && !(weighted_l2_loss(nudged, gt, w) > 0.0)) ++positive_failures;
    }
    return {worst_balance <= 1e-12 && worst_loss <= 1e-9 && zero_failures == 0 && positive_failures == 0,
            fmt("partitions=50 max balance rel err=%.2e (<=1e-12) max loss rel err=%.2e (<=1e-9) "
                "nonzero self-loss=%d non-positive perturbed loss=%d",
                worst_balance, worst_loss, zero_failures, positive_failures)};
}

// 5. Morphology against the naive double loop.
Outcome morphology_equivalence() {
    int mismatches = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const int w = 1 + static_cast<int>(oracle::hash2(s, 11) % 64);
        const int h = 1 + static_cast<int>(oracle::hash2(s, 12) % 64);
        const int r = static_cast<int>(s % 6);
        const int r2 = static_cast<int>((s / 6) % 6);
        const double density = 0.02 + 0.9 * static_cast<double>(oracle::hash2(s, 13) % 100) / 100.0;
        const BinaryMap m = oracle::random_map(GridDims(w, h), density, s + 7);
        if (!(dilate(m, disk_se(r)) == oracle::naive_dilate(m, r))) ++mismatches;
        if (!(erode(m, disk_se(r)) == oracle::naive_erode(m, r))) ++mismatches;
        if (!(close_asymmetric(m, r, r2) == oracle::naive_erode(oracle::naive_dilate(m, r), r2))) ++mismatches;
    }
    return {mismatches == 0, fmt("maps=200 radii 0..5 mismatching ops=%d", mismatches)};
}

// 6. Noise robustness.
Outcome noise_robustness() {
    const ShapeKind kinds[] = {ShapeKind::line, ShapeKind::polyline, ShapeKind::ellipse, ShapeKind::blob,
                               ShapeKind::rectangle};
    const GridDims dims(200, 160);
    std::vector<BinaryMap> skeletons;
    for (std::size_t i = 0; i < 5; ++i) skeletons.push_back(make_shape(random_shape_spec(kinds[i], dims, 3000 + i)).skeleton);
    std::vector<double> noisy, clean;
    for (const auto& skel : skeletons) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            PerturbSpec p;
            p.sigma = 0.3;
            p.seed = seed;
            noisy.push_back(round_trip(skel, ContextRadius(7), kRecovery, kTol, p).f_measure);
            p.sigma = 0.0;
            clean.push_back(round_trip(skel, ContextRadius(7), kRecovery, kTol, p).f_measure);
        }
    }
    const double mn = median(noisy), mc = median(clean);
    return {mn >= 0.80 && mc >= 0.95,
            fmt("runs=%zu median F sigma=0.3: %.4f (>=0.80) sigma=0: %.4f (>=0.95)", noisy.size(), mn, mc)};
}

// 7. Insensitivity to the context radius.
Outcome context_sweep() {
    const GridDims dims(160, 120);
    BinaryMap line(dims);
    for (int x = 20; x < 140; ++x) line.at(x, 60) = 1;
    const auto blob = make_shape(random_shape_spec(ShapeKind::blob, dims, 4000)).skeleton;
    std::string detail;
    bool pass = true;
    for (const auto& [name, skel] : {std::pair<const char*, const BinaryMap&>{"line", line}, {"blob", blob}}) {
        const auto rows = sweep_context_radius(skel, {3, 5, 7, 9, 11}, kRecovery, kTol);
        double lo = 1.0, hi = 0.0;
        for (const auto& row : rows) {
            lo = std::min(lo, row.f_measure);
            hi = std::max(hi, row.f_measure);
        }
        pass = pass && hi - lo <= 0.05;
        detail += fmt("%s F in [%.4f, %.4f] spread=%.4f (<=0.05) ", name, lo, hi, hi - lo);
    }
    return {pass, detail};
}

// 8. Recovery speed on 300x200.
Outcome recovery_speed() {
    DemoConfig config;
    config.dims = GridDims(300, 200);
    config.timing_repeats = 21;
    const DemoResult r = run_demo(config);
    return {r.recover_ms_median <= 50.0,
            fmt("300x200 median=%.3f ms (<=50) min=%.3f ms kernels=%s F=%.4f", r.recover_ms_median, r.recover_ms_min,
                simd::active().name, r.f_measure)};
}

// 9. Binary skeletonizer sanity.
Outcome binary_skeletonizer() {
    BinaryMap disk(GridDims(48, 48));
    for (int y = 0; y < 48; ++y) {
        for (int x = 0; x < 48; ++x) disk.at(x, y) = oracle::in_disk(x - 24, y - 24, 14) ? 1 : 0;
    }
    const BinaryMap ds = skeletonize_binary(disk);
    double far = count_true(ds) ? 0.0 : 1e9;
    for (const Point& p : true_pixels(ds)) far = std::max(far, std::hypot(p.x - 24, p.y - 24));

    BinaryMap rect(GridDims(44, 16));
    for (int y = 2; y < 14; ++y) {
        for (int x = 2; x < 42; ++x) rect.at(x, y) = 1;
    }
    const double hd = oracle::hausdorff(skeletonize_binary(rect), oracle::medial_axis(rect));
    return {far <= 2.0 && hd <= 2.0,
            fmt("disk: %zu px, farthest %.3f px from centre (<=2); 40x12 rectangle Hausdorff=%.3f (<=2)",
                count_true(ds), far, hd)};
}

// 10. Evaluation self-tests.
Outcome eval_self_tests() {
    const GridDims dims(300, 200);
    BinaryMap gt(dims);
    for (int x = 30; x < 270; ++x) gt.at(x, 100 + (x / 40) % 3) = 1;
    const double same = match_with_tolerance(gt, gt, kTol).f_measure();
    const double shifted = match_with_tolerance(oracle::shifted(gt, 1, 1), gt, kTol).f_measure();
    const double half = f_measure(0.5, 0.5);
    return {same == 1.0 && shifted == 1.0 && half == 0.5,
            fmt("identical F=%.4f shift-by-1 F=%.4f (d=%.3f px) F(0.5,0.5)=%.4f", same, shifted, kTol.pixels(dims), half)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"round-trip fidelity", round_trip_fidelity},
        {"distance transform exactness", dt_exactness},
        {"context flux invariants", flux_invariants},
        {"class balance and loss", balance_and_loss},
        {"morphology oracle equivalence", morphology_equivalence},
        {"noise robustness", noise_robustness},
        {"context radius insensitivity", context_sweep},
        {"recovery speed", recovery_speed},
        {"binary skeletonizer sanity", binary_skeletonizer},
        {"evaluation self-tests", eval_self_tests},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
