#pragma once

#include <cstdint>

#include "fluxskel/raster.hpp"

namespace fluxskel {

struct DistanceTransform {
    Raster<std::int64_t> squared;  // exact squared Euclidean distance
    ScalarMap dist;                // sqrt(squared)
    LabelMap nearest;              // a site attaining the minimum
};

/// Exact Euclidean distance transform with nearest-site labels.
///
/// Separable two-pass lower-envelope algorithm run entirely in integer
/// arithmetic. When several sites are equidistant the label is the one with
/// the smallest y, then the smallest x. Throws Errc::no_sites when `sites`
/// has no true pixel.
DistanceTransform euclidean_dt_with_labels(const BinaryMap& sites);

}  // namespace fluxskel
