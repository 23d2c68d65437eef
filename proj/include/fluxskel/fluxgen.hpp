#pragma once

#include <cstddef>
#include <cstdint>

#include "fluxskel/raster.hpp"

namespace fluxskel {

enum class Region : std::uint8_t { background = 0, context = 1, skeleton = 2 };

struct RegionPartition {
    Raster<Region> labels;
    std::size_t skeleton_count = 0;
    std::size_t context_count = 0;
    std::size_t background_count = 0;

    const GridDims& dims() const noexcept { return labels.dims(); }
};

/// Radius of the skeleton context disk, in pixels (>= 1).
class ContextRadius {
public:
    static constexpr int kDefault = 7;

    ContextRadius() = default;
    explicit ContextRadius(int r);
    int value() const noexcept { return r_; }

private:
    int r_ = kDefault;
};

/// Skeleton pixels, their disk-r neighbourhood minus the skeleton, and the
/// rest. Throws Errc::no_skeleton on an empty skeleton.
RegionPartition partition_regions(const BinaryMap& skeleton, ContextRadius r);

/// Ground-truth context flux: on context pixels the unit vector from the pixel
/// toward its nearest skeleton pixel, (0, 0) elsewhere. Directions are
/// computed in double precision and stored as float.
FluxField compute_context_flux(const BinaryMap& skeleton, ContextRadius r);

/// Class-balancing weights: foreground pixels (context and skeleton) get
/// |Rb| / N, background pixels get (|Rc| + |Rs|) / N.
ScalarMap pixel_weights(const RegionPartition& partition);

enum class LossNorm { squared, euclidean };

/// Sum over pixels of w(p) * ||gt(p) - pred(p)||^2 (or the unsquared norm).
/// Terms are added with fixed-shape pairwise summation, so the result does not
/// depend on the SIMD backend.
double weighted_l2_loss(const FluxField& pred, const FluxField& gt, const ScalarMap& weights,
                        LossNorm norm = LossNorm::squared);

}  // namespace fluxskel
