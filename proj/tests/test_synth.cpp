#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fluxskel/fluxgen.hpp"
#include "fluxskel/morph.hpp"
#include "fluxskel/pipeline.hpp"
#include "fluxskel/synth.hpp"
#include "support/oracles.hpp"

using namespace fluxskel;

namespace {

constexpr ShapeKind kAllKinds[] = {ShapeKind::line,      ShapeKind::polyline, ShapeKind::ellipse,
                                   ShapeKind::rectangle, ShapeKind::disk,     ShapeKind::blob};

bool is_curve(ShapeKind k) { return k == ShapeKind::line || k == ShapeKind::polyline || k == ShapeKind::ellipse; }

/// No 2x2 block of skeleton pixels.
bool one_pixel_wide(const BinaryMap& m) {
    for (int y = 0; y + 1 < m.height(); ++y) {
        for (int x = 0; x + 1 < m.width(); ++x) {
            if (m.at(x, y) && m.at(x + 1, y) && m.at(x, y + 1) && m.at(x + 1, y + 1)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("random draws") {
    CHECK(random_bits(1, 2, 3) == random_bits(1, 2, 3));
    CHECK(random_bits(1, 2, 3) != random_bits(1, 2, 4));
    CHECK(random_bits(1, 2, 3) != random_bits(1, 3, 3));
    CHECK(random_bits(1, 2, 3) != random_bits(2, 2, 3));
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);

    double sum = 0.0, sum2 = 0.0;
    constexpr int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = uniform01(7, 0, static_cast<std::uint64_t>(i));
        CHECK((u > 0.0 && u < 1.0));
        const double z = standard_normal(7, 1, static_cast<std::uint64_t>(i));
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.03);
    CHECK(std::abs(sum2 / n - 1.0) < 0.05);
}

TEST_CASE("shape names") {
    for (ShapeKind k : kAllKinds) CHECK(parse_shape_kind(shape_kind_name(k)) == k);
    CHECK(parse_shape_kind("ellipse-skeleton") == ShapeKind::ellipse);
    CHECK(parse_shape_kind("rectangle-mask") == ShapeKind::rectangle);
    CHECK(parse_shape_kind("blob-mask") == ShapeKind::blob);
    CHECK_FALSE(parse_shape_kind("triangle").has_value());
}

TEST_CASE("shape examples") {
    ShapeSpec line;
    line.kind = ShapeKind::line;
    line.dims = GridDims(32, 32);
    line.points = {{5, 5}, {25, 5}};
    const Shape s = make_shape(line);
    CHECK_FALSE(s.mask.has_value());
    CHECK(count_true(s.skeleton) == 21);
    for (int x = 5; x <= 25; ++x) CHECK(s.skeleton.at(x, 5) == 1);

    ShapeSpec rect;
    rect.kind = ShapeKind::rectangle;
    rect.dims = GridDims(64, 32);
    rect.corner = {10, 8};
    rect.rect_width = 30;
    rect.rect_height = 16;
    const Shape r = make_shape(rect);
    REQUIRE(r.mask.has_value());
    CHECK(count_true(*r.mask) == 480);
    CHECK(is_subset(r.skeleton, *r.mask));
    CHECK(count_true(r.skeleton) > 0);

    ShapeSpec bad = line;
    bad.points = {{5, 5}, {5, 5}};
    CHECK_THROWS_AS(make_shape(bad), Error);
    bad.points = {{5, 5}, {40, 5}};
    CHECK_THROWS_AS(make_shape(bad), Error);
}

TEST_CASE("paths are minimal 8-connected curves") {
    const BinaryMap diag = rasterize_path(GridDims(20, 20), {{2, 3}, {12, 9}, {4, 17}}, false);
    CHECK(oracle::count_components8(diag) == 1);
    CHECK(one_pixel_wide(diag));
    CHECK(diag.at(2, 3) == 1);
    CHECK(diag.at(12, 9) == 1);
    CHECK(diag.at(4, 17) == 1);

    const BinaryMap loop = rasterize_path(GridDims(20, 20), {{3, 3}, {15, 3}, {15, 12}, {3, 12}}, true);
    // Box perimeter minus the four corners, which the diagonal steps make redundant.
    CHECK(count_true(loop) == 2 * 12 + 2 * 9 - 4);
    CHECK(oracle::count_components8(loop) == 1);
}

TEST_CASE("generated shapes") {
    for (ShapeKind k : kAllKinds) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const GridDims dims(96, 72);
            const ShapeSpec spec = random_shape_spec(k, dims, seed);
            const Shape a = make_shape(spec);
            const Shape b = make_shape(spec);
            CAPTURE(shape_kind_name(k));
            CAPTURE(seed);
            CHECK(a.skeleton == b.skeleton);
            CHECK(count_true(a.skeleton) > 0);
            CHECK(one_pixel_wide(a.skeleton));
            CHECK(a.mask.has_value() == !is_curve(k));
            if (is_curve(k)) CHECK(oracle::count_components8(a.skeleton) == 1);
            if (a.mask) CHECK(is_subset(a.skeleton, *a.mask));
        }
        CHECK(make_shape(random_shape_spec(k, GridDims(96, 72), 1)).skeleton !=
              make_shape(random_shape_spec(k, GridDims(96, 72), 2)).skeleton);
    }
}

TEST_CASE("thinning") {
    BinaryMap bar(GridDims(30, 12));
    for (int y = 3; y < 8; ++y) {
        for (int x = 3; x < 27; ++x) bar.at(x, y) = 1;
    }
    const BinaryMap t = thin(bar);
    CHECK(is_subset(t, bar));
    CHECK(one_pixel_wide(t));
    CHECK(oracle::count_components8(t) == 1);
    CHECK(thin(t) == t);
}

TEST_CASE("flux perturbation") {
    BinaryMap skel(GridDims(80, 60));
    for (int x = 10; x < 70; ++x) skel.at(x, 30) = 1;
    const FluxField gt = compute_context_flux(skel, ContextRadius(7));

    CHECK(perturb_flux(gt, PerturbSpec{}) == gt);

    PerturbSpec noise;
    noise.sigma = 0.1;
    noise.seed = 4;
    const FluxField n1 = perturb_flux(gt, noise);
    CHECK(n1 == perturb_flux(gt, noise));
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (gt[i] == Vec2f{}) CHECK(n1[i] == Vec2f{});
    }

    FluxField unit(GridDims(120, 100));
    for (std::size_t i = 0; i < unit.size(); ++i) unit.set(i, Vec2f{0.6f, 0.8f});
    const FluxField nu = perturb_flux(unit, noise);
    double total = 0.0;
    for (std::size_t i = 0; i < unit.size(); ++i) total += std::hypot(nu[i].x - unit[i].x, nu[i].y - unit[i].y);
    const double mean_abs = total / static_cast<double>(unit.size());
    CHECK(mean_abs >= 0.08);
    CHECK(mean_abs <= 0.18);
    noise.seed = 5;
    CHECK(perturb_flux(gt, noise) != n1);

    PerturbSpec everywhere = noise;
    everywhere.noise_on_zero = true;
    CHECK(perturb_flux(gt, everywhere).at(0, 0) != Vec2f{});

    FluxField ones(GridDims(20, 20));
    for (std::size_t i = 0; i < ones.size(); ++i) ones.set(i, Vec2f{1.0f, 0.0f});
    PerturbSpec patch;
    patch.dropout_patches = 1;
    patch.patch_size = 5;
    patch.seed = 11;
    const FluxField holes = perturb_flux(ones, patch);
    std::size_t zeroed = 0;
    for (std::size_t i = 0; i < holes.size(); ++i) zeroed += holes[i] == Vec2f{} ? 1 : 0;
    CHECK(zeroed == 25);

    PerturbSpec jitter;
    jitter.angle_jitter_deg = 20.0;
    jitter.seed = 3;
    const FluxField turned = perturb_flux(gt, jitter);
    bool moved = false;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        const double a = std::hypot(gt[i].x, gt[i].y);
        const double b = std::hypot(turned[i].x, turned[i].y);
        CHECK(b == doctest::Approx(a).epsilon(1e-6));
        moved = moved || !(turned[i] == gt[i]);
    }
    CHECK(moved);

    PerturbSpec invalid;
    invalid.sigma = -1.0;
    CHECK_THROWS_AS(perturb_flux(gt, invalid), Error);
}

TEST_CASE("context radius sweep") {
    BinaryMap skel(GridDims(100, 60));
    for (int x = 15; x < 85; ++x) skel.at(x, 30) = 1;
    const auto rows = sweep_context_radius(skel, {3, 5, 7, 9, 11}, RecoveryParams{}, MatchTolerance());
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].r == 3);
    CHECK(rows[4].r == 11);
    for (const auto& row : rows) CHECK(row.f_measure >= 0.9);

    const auto j = nlohmann::json::parse(sweep_to_json(rows));
    CHECK(j["sweep"].size() == 5);
    CHECK(j["sweep"][2]["r"] == 7);
    std::istringstream csv(sweep_to_csv(rows));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "r,f_measure");
    std::getline(csv, line);
    CHECK(line.rfind("3,", 0) == 0);

    CHECK_THROWS_AS(sweep_context_radius(skel, {}, RecoveryParams{}, MatchTolerance()), Error);
    CHECK_THROWS_AS(sweep_context_radius(skel, {0}, RecoveryParams{}, MatchTolerance()), Error);
}

TEST_CASE("recovery degrades with noise") {
    const auto skel = make_shape(random_shape_spec(ShapeKind::polyline, GridDims(128, 96), 3)).skeleton;
    std::vector<double> f;
    for (double sigma : {0.0, 0.3, 1.0}) {
        std::vector<double> per_seed;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            PerturbSpec p;
            p.sigma = sigma;
            p.seed = seed;
            per_seed.push_back(round_trip(skel, ContextRadius(7), RecoveryParams{}, MatchTolerance(), p).f_measure);
        }
        std::nth_element(per_seed.begin(), per_seed.begin() + 2, per_seed.end());
        f.push_back(per_seed[2]);
    }
    CHECK(f[0] >= f[1]);
    CHECK(f[1] >= f[2]);
    CHECK(f[0] >= 0.9);
}
