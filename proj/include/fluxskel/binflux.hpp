#pragma once

#include <cstddef>

#include "fluxskel/raster.hpp"

namespace fluxskel {

struct AofParams {
    double tau = -0.4;                // skeleton where the average outward flux is below this
    std::size_t min_object_area = 9;  // object components smaller than this yield no skeleton

    void validate() const;
};

/// Distance from each object pixel to the nearest background pixel, where
/// everything outside the grid is background. Zero on background.
/// Throws Errc::empty_mask when the mask has no object pixel.
ScalarMap interior_edt(const BinaryMap& mask);

/// Average outward flux of grad(dist) through the 8-neighbour ring:
///   AOF(p) = 1/8 * sum_i <grad D(p + n_i), n_i / |n_i|>
/// Gradients use central differences, one-sided at the border; neighbours
/// outside the grid contribute nothing.
ScalarMap average_outward_flux(const ScalarMap& dist);

/// Object pixels whose AOF is below tau, dropped for object components
/// smaller than min_object_area.
BinaryMap skeletonize_binary(const BinaryMap& mask, const AofParams& params = {});

}  // namespace fluxskel
