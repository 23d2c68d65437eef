#include "fluxskel/morph.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "fluxskel/simd.hpp"

namespace fluxskel {

namespace {

constexpr std::uint16_t kFar = std::numeric_limits<std::uint16_t>::max();

std::uint16_t saturate(long v) { return static_cast<std::uint16_t>(std::min<long>(v, kFar)); }

// Horizontal distance from each pixel to the nearest pixel equal to `target`
// in the same row. With `border_matches`, the columns just outside the row
// count as matches.
std::vector<std::uint16_t> row_distances(const BinaryMap& map, std::uint8_t target, bool border_matches) {
    const int w = map.width();
    const int h = map.height();
    std::vector<std::uint16_t> dist(map.size());
    const long none = std::numeric_limits<int>::min() / 2;
    for (int y = 0; y < h; ++y) {
        const auto row = map.row(y);
        std::uint16_t* out = dist.data() + map.dims().index(0, y);
        long last = border_matches ? -1 : none;
        for (int x = 0; x < w; ++x) {
            if (row[static_cast<std::size_t>(x)] == target) last = x;
            out[x] = last == none ? kFar : saturate(x - last);
        }
        long next = border_matches ? w : none;
        for (int x = w - 1; x >= 0; --x) {
            if (row[static_cast<std::size_t>(x)] == target) next = x;
            if (next != none) out[x] = std::min(out[x], saturate(next - x));
        }
    }
    return dist;
}

}  // namespace

StructuringElement disk_se(int radius) {
    if (radius < 0 || radius >= kFar) {
        throw Error(Errc::invalid_argument, "disk radius out of range: " + std::to_string(radius));
    }
    StructuringElement se;
    se.radius_ = radius;
    const long r2 = static_cast<long>(radius) * radius;
    for (int dy = -radius; dy <= radius; ++dy) {
        const long rem = r2 - static_cast<long>(dy) * dy;
        int hw = 0;
        while (static_cast<long>(hw + 1) * (hw + 1) <= rem) ++hw;
        se.half_widths_.push_back(hw);
        for (int dx = -hw; dx <= hw; ++dx) se.offsets_.push_back({dx, dy});
    }
    return se;
}

BinaryMap dilate(const BinaryMap& map, const StructuringElement& se) {
    const auto& k = simd::active();
    const int w = map.width();
    const int h = map.height();
    const int r = se.radius();
    const auto dist = row_distances(map, 1, false);
    BinaryMap out(map.dims());
    for (int y = 0; y < h; ++y) {
        std::uint8_t* dst = out.row(y).data();
        for (int dy = std::max(-r, -y); dy <= std::min(r, h - 1 - y); ++dy) {
            const std::uint16_t* src = dist.data() + map.dims().index(0, y + dy);
            k.or_within(src, static_cast<std::uint16_t>(se.half_width(dy)), dst, static_cast<std::size_t>(w));
        }
    }
    return out;
}

BinaryMap erode(const BinaryMap& map, const StructuringElement& se) {
    const auto& k = simd::active();
    const int w = map.width();
    const int h = map.height();
    const int r = se.radius();
    const auto dist = row_distances(map, 0, true);
    BinaryMap out(map.dims());
    for (int y = 0; y < h; ++y) {
        // Any disk row falling outside the grid erodes the whole output row.
        if (y - r < 0 || y + r >= h) continue;
        auto dst = out.row(y);
        std::fill(dst.begin(), dst.end(), std::uint8_t{1});
        for (int dy = -r; dy <= r; ++dy) {
            const std::uint16_t* src = dist.data() + map.dims().index(0, y + dy);
            k.and_beyond(src, static_cast<std::uint16_t>(se.half_width(dy)), dst.data(), static_cast<std::size_t>(w));
        }
    }
    return out;
}

BinaryMap close_asymmetric(const BinaryMap& map, int k1, int k2) {
    return erode(dilate(map, disk_se(k1)), disk_se(k2));
}

Components label_components(const BinaryMap& map, Connectivity conn) {
    const GridDims dims = map.dims();
    Components comps{Raster<int>(dims, 0), {}};
    std::vector<std::size_t> queue;
    const bool eight = conn == Connectivity::eight;
    for (std::size_t seed = 0; seed < map.size(); ++seed) {
        if (!map[seed] || comps.labels[seed] != 0) continue;
        const int label = static_cast<int>(comps.areas.size()) + 1;
        comps.labels[seed] = label;
        queue.assign(1, seed);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Point p = dims.point(queue[head]);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
                    const int nx = p.x + dx;
                    const int ny = p.y + dy;
                    if (!dims.contains(nx, ny)) continue;
                    const std::size_t ni = dims.index(nx, ny);
                    if (map[ni] && comps.labels[ni] == 0) {
                        comps.labels[ni] = label;
                        queue.push_back(ni);
                    }
                }
            }
        }
        comps.areas.push_back(queue.size());
    }
    return comps;
}

BinaryMap largest_component(const BinaryMap& map, Connectivity conn) {
    const Components comps = label_components(map, conn);
    BinaryMap out(map.dims());
    if (comps.count() == 0) return out;
    const auto best = std::max_element(comps.areas.begin(), comps.areas.end()) - comps.areas.begin();
    const int label = static_cast<int>(best) + 1;
    for (std::size_t i = 0; i < map.size(); ++i) out[i] = comps.labels[i] == label ? 1 : 0;
    return out;
}

}  // namespace fluxskel
