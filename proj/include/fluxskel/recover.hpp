#pragma once

#include "fluxskel/raster.hpp"

namespace fluxskel {

struct RecoveryParams {
    double lambda = 0.4;  // magnitude threshold
    int k1 = 3;           // dilation radius
    int k2 = 4;           // erosion radius

    /// Throws Errc::invalid_argument if lambda is negative/non-finite or a radius is negative.
    void validate() const;
};

/// One of the eight neighbour directions. Index k points along 45 * k degrees
/// with y growing downward: 0 -> (1,0), 2 -> (0,1), 4 -> (-1,0), 6 -> (0,-1).
struct DirectionBin {
    int index = 0;
    Point offset{1, 0};
};

DirectionBin direction_bin_from_index(int index);
/// round(angle / 45) mod 8, rounding halves away from zero.
DirectionBin bin_angle_degrees(double angle_deg);
/// Throws Errc::no_direction for the zero vector.
DirectionBin bin_direction(double fx, double fy);
inline DirectionBin bin_direction(Vec2f v) { return bin_direction(v.x, v.y); }

/// Endpoint scan before morphology: |F(p)| > lambda and the binned neighbour
/// has |F| <= lambda (neighbours outside the grid count as 0).
BinaryMap detect_flux_endpoints(const FluxField& flux, double lambda);

/// Full recovery: endpoint scan followed by close_asymmetric(k1, k2).
BinaryMap recover_skeleton(const FluxField& flux, const RecoveryParams& params = {});

/// 1 - min(1, |F(p)|) on skeleton pixels, 0 elsewhere.
ScalarMap confidence_map(const FluxField& flux, const BinaryMap& skeleton);

}  // namespace fluxskel
