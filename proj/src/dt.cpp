#include "fluxskel/dt.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace fluxskel {

namespace {

constexpr std::int64_t kNoSiteInColumn = -1;

// Floor division for a positive divisor.
std::int64_t floor_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if ((num % den != 0) && (num < 0)) --q;
    return q;
}

// Candidate for one row pass: column `col` whose nearest site in that column
// sits at row `site_row`, vertical squared distance `g`.
struct Parabola {
    std::int64_t col;
    std::int64_t site_row;
    std::int64_t g;
};

// Strict order used on exact ties of squared distance: smaller site row first,
// then smaller column.
bool precedes(const Parabola& a, const Parabola& b) {
    return a.site_row != b.site_row ? a.site_row < b.site_row : a.col < b.col;
}

// First integer position i at which `later` (larger column) beats `earlier`.
// later wins iff d(i) = f_earlier(i) - f_later(i) > 0, or d(i) == 0 and later
// precedes earlier under the tie order. d(i) = 2i(b - a) - C is increasing in i.
std::int64_t takeover(const Parabola& earlier, const Parabola& later) {
    const std::int64_t a = earlier.col;
    const std::int64_t b = later.col;
    const std::int64_t c = b * b - a * a + later.g - earlier.g;
    const std::int64_t den = 2 * (b - a);
    if (precedes(later, earlier)) {
        // smallest i with i * den >= c
        return -floor_div(-c, den);
    }
    // smallest i with i * den > c
    return floor_div(c, den) + 1;
}

}  // namespace

DistanceTransform euclidean_dt_with_labels(const BinaryMap& sites) {
    const GridDims dims = sites.dims();
    const int w = dims.width;
    const int h = dims.height;

    // Column pass: nearest site within each column, ties to the upper one.
    Raster<std::int64_t> col_site(dims, kNoSiteInColumn);
    bool any_site = false;
    for (int x = 0; x < w; ++x) {
        std::int64_t above = kNoSiteInColumn;
        for (int y = 0; y < h; ++y) {
            if (sites.at(x, y)) above = y;
            col_site.at(x, y) = above;
        }
        std::int64_t below = kNoSiteInColumn;
        for (int y = h - 1; y >= 0; --y) {
            if (sites.at(x, y)) {
                below = y;
                any_site = true;
            }
            const std::int64_t up = col_site.at(x, y);
            if (below == kNoSiteInColumn) continue;
            if (up == kNoSiteInColumn || (below - y) < (y - up)) col_site.at(x, y) = below;
        }
    }
    if (!any_site) throw Error(Errc::no_sites);

    DistanceTransform out{Raster<std::int64_t>(dims), ScalarMap(dims), LabelMap(dims, kNoLabel)};

    // Row pass: lower envelope of (i - x)^2 + g(x) over columns holding a site.
    std::vector<Parabola> hull(static_cast<std::size_t>(w));
    std::vector<std::int64_t> start(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        std::size_t k = 0;
        for (int x = 0; x < w; ++x) {
            const std::int64_t sr = col_site.at(x, y);
            if (sr == kNoSiteInColumn) continue;
            const Parabola q{x, sr, (sr - y) * (sr - y)};
            std::int64_t s = std::numeric_limits<std::int64_t>::min();
            while (k > 0) {
                s = takeover(hull[k - 1], q);
                if (s <= start[k - 1]) {
                    --k;
                    s = std::numeric_limits<std::int64_t>::min();
                } else {
                    break;
                }
            }
            hull[k] = q;
            start[k] = s;
            ++k;
        }

        std::size_t j = 0;
        for (int i = 0; i < w; ++i) {
            while (j + 1 < k && start[j + 1] <= i) ++j;
            const Parabola& p = hull[j];
            const std::int64_t dx = i - p.col;
            const std::int64_t d2 = dx * dx + p.g;
            out.squared.at(i, y) = d2;
            out.dist.at(i, y) = std::sqrt(static_cast<double>(d2));
            out.nearest.at(i, y) = Point{static_cast<int>(p.col), static_cast<int>(p.site_row)};
        }
    }
    return out;
}

}  // namespace fluxskel
