#include "fluxskel/fluxgen.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "fluxskel/dt.hpp"
#include "fluxskel/morph.hpp"
#include "fluxskel/simd.hpp"

namespace fluxskel {

ContextRadius::ContextRadius(int r) : r_(r) {
    if (r < 1) throw Error(Errc::invalid_argument, "context radius must be >= 1, got " + std::to_string(r));
}

RegionPartition partition_regions(const BinaryMap& skeleton, ContextRadius r) {
    if (count_true(skeleton) == 0) throw Error(Errc::no_skeleton);
    const BinaryMap grown = dilate(skeleton, disk_se(r.value()));
    RegionPartition part{Raster<Region>(skeleton.dims(), Region::background)};
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
        if (skeleton[i]) {
            part.labels[i] = Region::skeleton;
            ++part.skeleton_count;
        } else if (grown[i]) {
            part.labels[i] = Region::context;
            ++part.context_count;
        } else {
            ++part.background_count;
        }
    }
    return part;
}

FluxField compute_context_flux(const BinaryMap& skeleton, ContextRadius r) {
    const RegionPartition part = partition_regions(skeleton, r);
    const DistanceTransform edt = euclidean_dt_with_labels(skeleton);
    FluxField flux(skeleton.dims());
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
        if (part.labels[i] != Region::context) continue;
        const Point p = skeleton.dims().point(i);
        const Point n = edt.nearest[i];
        const double dx = n.x - p.x;
        const double dy = n.y - p.y;
        const double len = edt.dist[i];
        flux.set(i, Vec2f{static_cast<float>(dx / len), static_cast<float>(dy / len)});
    }
    return flux;
}

ScalarMap pixel_weights(const RegionPartition& partition) {
    const double total = static_cast<double>(partition.skeleton_count + partition.context_count +
                                             partition.background_count);
    const double fg = static_cast<double>(partition.background_count) / total;
    const double bg = static_cast<double>(partition.context_count + partition.skeleton_count) / total;
    ScalarMap w(partition.dims());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = partition.labels[i] == Region::background ? bg : fg;
    }
    return w;
}

namespace {

double pairwise_sum(std::span<const double> v) {
    constexpr std::size_t kLeaf = 16;
    if (v.size() <= kLeaf) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

double weighted_l2_loss(const FluxField& pred, const FluxField& gt, const ScalarMap& weights, LossNorm norm) {
    if (pred.dims() != gt.dims() || pred.dims() != weights.dims()) throw Error(Errc::dimension_mismatch);
    std::vector<double> terms(pred.size());
    simd::active().squared_diff(pred.interleaved().data(), gt.interleaved().data(), terms.data(), terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double d = norm == LossNorm::squared ? terms[i] : std::sqrt(terms[i]);
        terms[i] = weights[i] * d;
    }
    return pairwise_sum(terms);
}

}  // namespace fluxskel
