#include "fluxskel/recover.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "fluxskel/morph.hpp"
#include "fluxskel/simd.hpp"

namespace fluxskel {

void RecoveryParams::validate() const {
    if (!std::isfinite(lambda) || lambda < 0.0) throw Error(Errc::invalid_argument, "lambda must be finite and >= 0");
    if (k1 < 0 || k2 < 0) throw Error(Errc::invalid_argument, "structuring element radii must be >= 0");
}

namespace {

constexpr std::array<Point, 8> kOffsets{{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1},
}};

// Largest float not above t: for any float m, m > t  <=>  m > float_floor(t).
float float_floor(double t) {
    float f = static_cast<float>(t);
    if (static_cast<double>(f) > t) f = std::nextafter(f, -INFINITY);
    return f;
}

}  // namespace

DirectionBin direction_bin_from_index(int index) {
    const int k = ((index % 8) + 8) % 8;
    return {k, kOffsets[static_cast<std::size_t>(k)]};
}

DirectionBin bin_angle_degrees(double angle_deg) {
    // std::round rounds halves away from zero.
    return direction_bin_from_index(static_cast<int>(std::round(angle_deg / 45.0)));
}

DirectionBin bin_direction(double fx, double fy) {
    if (fx == 0.0 && fy == 0.0) throw Error(Errc::no_direction);
    return bin_angle_degrees(std::atan2(fy, fx) * (180.0 / std::numbers::pi));
}

BinaryMap detect_flux_endpoints(const FluxField& flux, double lambda) {
    const GridDims dims = flux.dims();
    const auto& k = simd::active();
    std::vector<float> mag(flux.size());
    k.magnitude(flux.interleaved().data(), mag.data(), mag.size());
    BinaryMap strong(dims);
    k.threshold_gt(mag.data(), float_floor(lambda), strong.values().data(), mag.size());

    BinaryMap out(dims);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!strong[i]) continue;
        const Vec2f v = flux[i];
        const Point p = dims.point(i);
        const Point step = bin_direction(v).offset;
        const int qx = p.x + step.x;
        const int qy = p.y + step.y;
        if (!dims.contains(qx, qy) || !strong.at(qx, qy)) out[i] = 1;
    }
    return out;
}

BinaryMap recover_skeleton(const FluxField& flux, const RecoveryParams& params) {
    params.validate();
    return close_asymmetric(detect_flux_endpoints(flux, params.lambda), params.k1, params.k2);
}

ScalarMap confidence_map(const FluxField& flux, const BinaryMap& skeleton) {
    if (flux.dims() != skeleton.dims()) throw Error(Errc::dimension_mismatch);
    const ScalarMap mag = magnitude(flux);
    ScalarMap conf(flux.dims());
    for (std::size_t i = 0; i < conf.size(); ++i) {
        if (skeleton[i]) conf[i] = 1.0 - std::min(1.0, mag[i]);
    }
    return conf;
}

}  // namespace fluxskel
