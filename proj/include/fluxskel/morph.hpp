#pragma once

#include <vector>

#include "fluxskel/raster.hpp"

namespace fluxskel {

/// Disk of integer radius: offsets (dx, dy) with dx^2 + dy^2 <= radius^2.
class StructuringElement {
public:
    int radius() const noexcept { return radius_; }
    /// Sorted by (dy, dx).
    const std::vector<Point>& offsets() const noexcept { return offsets_; }
    /// Half-width of the horizontal run at row offset dy, for |dy| <= radius.
    int half_width(int dy) const noexcept { return half_widths_[static_cast<std::size_t>(dy + radius_)]; }

private:
    friend StructuringElement disk_se(int radius);

    int radius_ = 0;
    std::vector<Point> offsets_;
    std::vector<int> half_widths_;
};

/// Throws Errc::invalid_argument for negative radii or radii >= 65535.
StructuringElement disk_se(int radius);

// Pixels outside the grid count as false for both operations, so erosion eats
// in from the image border.
BinaryMap dilate(const BinaryMap& map, const StructuringElement& se);
BinaryMap erode(const BinaryMap& map, const StructuringElement& se);

/// erode(dilate(map, disk k1), disk k2). Not a true closing when k1 != k2.
BinaryMap close_asymmetric(const BinaryMap& map, int k1, int k2);

enum class Connectivity { four, eight };

struct Components {
    Raster<int> labels;          // 0 for background, 1..count otherwise
    std::vector<std::size_t> areas;  // areas[label - 1]
    std::size_t count() const noexcept { return areas.size(); }
};

/// Labels are assigned in raster-scan order of each component's first pixel.
Components label_components(const BinaryMap& map, Connectivity conn = Connectivity::eight);
BinaryMap largest_component(const BinaryMap& map, Connectivity conn = Connectivity::eight);

}  // namespace fluxskel
