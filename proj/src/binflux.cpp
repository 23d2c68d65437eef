#include "fluxskel/binflux.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fluxskel/dt.hpp"
#include "fluxskel/morph.hpp"
#include "fluxskel/simd.hpp"

namespace fluxskel {

void AofParams::validate() const {
    if (!(tau < 0.0)) throw Error(Errc::invalid_argument, "tau must be negative");
    if (min_object_area < 1) throw Error(Errc::invalid_argument, "min_object_area must be >= 1");
}

ScalarMap interior_edt(const BinaryMap& mask) {
    if (count_true(mask) == 0) throw Error(Errc::empty_mask);
    // One-pixel background ring stands in for everything outside the grid.
    const GridDims padded(mask.width() + 2, mask.height() + 2);
    BinaryMap sites(padded, 1);
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) sites.at(x + 1, y + 1) = mask.at(x, y) ? 0 : 1;
    }
    const DistanceTransform edt = euclidean_dt_with_labels(sites);
    ScalarMap out(mask.dims());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) out.at(x, y) = edt.dist.at(x + 1, y + 1);
    }
    return out;
}

namespace {

double difference(const ScalarMap& d, int x, int y, int dx, int dy) {
    const int n = dx != 0 ? d.width() : d.height();
    const int i = dx != 0 ? x : y;
    if (n == 1) return 0.0;
    if (i == 0) return d.at(x + dx, y + dy) - d.at(x, y);
    if (i == n - 1) return d.at(x, y) - d.at(x - dx, y - dy);
    return 0.5 * (d.at(x + dx, y + dy) - d.at(x - dx, y - dy));
}

}  // namespace

ScalarMap average_outward_flux(const ScalarMap& dist) {
    const int w = dist.width();
    const int h = dist.height();
    ScalarMap gx(dist.dims());
    ScalarMap gy(dist.dims());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            gx.at(x, y) = difference(dist, x, y, 1, 0);
            gy.at(x, y) = difference(dist, x, y, 0, 1);
        }
    }

    const auto& k = simd::active();
    const double diag = 1.0 / std::sqrt(2.0);
    ScalarMap aof(dist.dims());
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const double scale = (dx != 0 && dy != 0) ? diag : 1.0;
            const double nx = dx * scale;
            const double ny = dy * scale;
            // Output columns whose neighbour column x + dx is inside the grid.
            const int x0 = std::max(0, -dx);
            const int x1 = std::min(w, w - dx);
            if (x1 <= x0) continue;
            for (int y = std::max(0, -dy); y < std::min(h, h - dy); ++y) {
                k.dot_accumulate(&gx.at(x0 + dx, y + dy), &gy.at(x0 + dx, y + dy), nx, ny, &aof.at(x0, y),
                                 static_cast<std::size_t>(x1 - x0));
            }
        }
    }
    for (double& v : aof.values()) v /= 8.0;
    return aof;
}

BinaryMap skeletonize_binary(const BinaryMap& mask, const AofParams& params) {
    params.validate();
    const ScalarMap aof = average_outward_flux(interior_edt(mask));
    const Components objects = label_components(mask, Connectivity::eight);
    BinaryMap skeleton(mask.dims());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i] || !(aof[i] < params.tau)) continue;
        const auto area = objects.areas[static_cast<std::size_t>(objects.labels[i] - 1)];
        if (area >= params.min_object_area) skeleton[i] = 1;
    }
    return skeleton;
}

}  // namespace fluxskel
