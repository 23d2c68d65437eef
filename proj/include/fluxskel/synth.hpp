#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fluxskel/eval.hpp"
#include "fluxskel/raster.hpp"
#include "fluxskel/recover.hpp"

namespace fluxskel {

// Counter-based random numbers: value k of stream s under seed is a pure
// function splitmix64(seed, s, k), so any draw can be reproduced without
// replaying the ones before it.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t random_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept;
/// Uniform in (0, 1); 53 random mantissa bits, never exactly 0.
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept;
/// Box-Muller on draws 2k and 2k+1 of the stream; returns the cosine branch.
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept;

enum class ShapeKind { line, polyline, ellipse, rectangle, disk, blob };

std::string_view shape_kind_name(ShapeKind kind) noexcept;
/// Accepts "line", "polyline", "ellipse" / "ellipse-skeleton", "rectangle" /
/// "rectangle-mask", "disk" / "disk-mask", "blob" / "blob-mask".
std::optional<ShapeKind> parse_shape_kind(std::string_view text) noexcept;

struct ShapeSpec {
    ShapeKind kind = ShapeKind::line;
    GridDims dims{64, 64};
    std::vector<Point> points;  // line: 2 endpoints; polyline: >= 2 vertices
    Point center{32, 32};       // ellipse, disk
    double radius_x = 10.0;     // ellipse semi-axes; disk uses radius_x
    double radius_y = 6.0;
    Point corner{0, 0};         // rectangle top-left
    int rect_width = 10;
    int rect_height = 10;
    double blob_cell = 16.0;    // value-noise lattice spacing, pixels
    std::uint64_t seed = 0;
};

struct Shape {
    std::optional<BinaryMap> mask;  // only for the mask kinds
    BinaryMap skeleton;
};

/// Curve kinds are rasterised as minimal 8-connected paths. Mask kinds take
/// their skeleton from skeletonize_binary(), thinned to one pixel.
/// Throws Errc::degenerate_shape for empty or out-of-grid specs.
Shape make_shape(const ShapeSpec& spec);

/// Reasonable randomised parameters for `kind` on `dims`, derived from seed.
ShapeSpec random_shape_spec(ShapeKind kind, GridDims dims, std::uint64_t seed);

/// 8-connected path through `vertices` (Bresenham segments) with redundant
/// corner pixels removed.
BinaryMap rasterize_path(GridDims dims, const std::vector<Point>& vertices, bool closed);

/// Zhang-Suen thinning.
BinaryMap thin(const BinaryMap& map);

struct PerturbSpec {
    double sigma = 0.0;           // per-component Gaussian noise std
    int dropout_patches = 0;
    int patch_size = 5;           // side of each zeroed square patch
    double angle_jitter_deg = 0.0;
    bool noise_on_zero = false;   // also add component noise to (0,0) vectors
    std::uint64_t seed = 0;

    void validate() const;
};

/// Noise, then rotation jitter of nonzero vectors, then patch dropout.
FluxField perturb_flux(const FluxField& flux, const PerturbSpec& spec);

struct SweepRow {
    int r = 0;
    double f_measure = 0.0;
};

/// Ground-truth flux at each radius, recovered and scored against `skeleton`.
std::vector<SweepRow> sweep_context_radius(const BinaryMap& skeleton, const std::vector<int>& radii,
                                           const RecoveryParams& params, MatchTolerance tol);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows, int indent = -1);

}  // namespace fluxskel
