#include "fluxskel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fluxskel/binflux.hpp"
#include "fluxskel/fluxgen.hpp"
#include "fluxskel/morph.hpp"

namespace fluxskel {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t random_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) + counter);
}

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept {
    return (static_cast<double>(random_bits(seed, stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept {
    const double u1 = uniform01(seed, stream, 2 * counter);
    const double u2 = uniform01(seed, stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string_view shape_kind_name(ShapeKind kind) noexcept {
    switch (kind) {
        case ShapeKind::line: return "line";
        case ShapeKind::polyline: return "polyline";
        case ShapeKind::ellipse: return "ellipse";
        case ShapeKind::rectangle: return "rectangle";
        case ShapeKind::disk: return "disk";
        case ShapeKind::blob: return "blob";
    }
    return "unknown";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view text) noexcept {
    if (text == "line") return ShapeKind::line;
    if (text == "polyline") return ShapeKind::polyline;
    if (text == "ellipse" || text == "ellipse-skeleton") return ShapeKind::ellipse;
    if (text == "rectangle" || text == "rectangle-mask") return ShapeKind::rectangle;
    if (text == "disk" || text == "disk-mask") return ShapeKind::disk;
    if (text == "blob" || text == "blob-mask") return ShapeKind::blob;
    return std::nullopt;
}

namespace {

// Random stream ids.
constexpr std::uint64_t kNoiseStream = 1;
constexpr std::uint64_t kJitterStream = 2;
constexpr std::uint64_t kPatchStream = 3;
constexpr std::uint64_t kBlobStream = 7;
constexpr std::uint64_t kParamStream = 100;

void bresenham(Point a, Point b, std::vector<Point>& out) {
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    Point p = a;
    while (true) {
        if (out.empty() || !(out.back() == p)) out.push_back(p);
        if (p == b) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            p.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            p.y += sy;
        }
    }
}

bool touching(Point a, Point b) { return std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1; }

/// A polyline may continue from vertices.back() to `next` when the turn is no
/// sharper than 60 degrees and the new segment keeps 3 px away from the
/// earlier ones (outside a 4 px neighbourhood of the shared vertex). This keeps
/// the rasterised path one pixel wide.
bool keeps_clear(const std::vector<Point>& vertices, Point next) {
    const Point last = vertices.back();
    if (vertices.size() >= 2) {
        const Point prev = vertices[vertices.size() - 2];
        const double ux = prev.x - last.x, uy = prev.y - last.y;
        const double vx = next.x - last.x, vy = next.y - last.y;
        if (ux * vx + uy * vy > 0.5 * std::hypot(ux, uy) * std::hypot(vx, vy)) return false;
    }
    std::vector<Point> earlier;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) bresenham(vertices[i], vertices[i + 1], earlier);
    std::vector<Point> fresh;
    bresenham(last, next, fresh);
    for (const Point& p : fresh) {
        if (std::hypot(p.x - last.x, p.y - last.y) < 4.0) continue;
        for (const Point& q : earlier) {
            if (std::hypot(p.x - q.x, p.y - q.y) < 3.0) return false;
        }
    }
    return true;
}

void require_inside(GridDims dims, const std::vector<Point>& pts) {
    for (const Point& p : pts) {
        if (!dims.contains(p)) {
            throw Error(Errc::degenerate_shape,
                        "vertex (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") outside the grid");
        }
    }
}

BinaryMap fill_holes(const BinaryMap& mask) {
    const BinaryMap background = complement(mask);
    const Components comps = label_components(background, Connectivity::four);
    std::vector<char> touches_border(comps.count() + 1, 0);
    const GridDims dims = mask.dims();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const Point p = dims.point(i);
        if (comps.labels[i] != 0 && (p.x == 0 || p.y == 0 || p.x == dims.width - 1 || p.y == dims.height - 1)) {
            touches_border[static_cast<std::size_t>(comps.labels[i])] = 1;
        }
    }
    BinaryMap out = mask;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (comps.labels[i] != 0 && !touches_border[static_cast<std::size_t>(comps.labels[i])]) out[i] = 1;
    }
    return out;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

BinaryMap blob_mask(const ShapeSpec& spec) {
    const GridDims dims = spec.dims;
    const double cell = std::max(2.0, spec.blob_cell);
    const int nodes_x = static_cast<int>(std::ceil(dims.width / cell)) + 2;
    auto node = [&](int i, int j) {
        return uniform01(spec.seed, kBlobStream, static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(nodes_x) +
                                                     static_cast<std::uint64_t>(i));
    };
    const double cx = 0.5 * (dims.width - 1);
    const double cy = 0.5 * (dims.height - 1);
    BinaryMap mask(dims);
    for (int y = 0; y < dims.height; ++y) {
        for (int x = 0; x < dims.width; ++x) {
            const double fx = x / cell;
            const double fy = y / cell;
            const int ix = static_cast<int>(fx);
            const int iy = static_cast<int>(fy);
            const double tx = smoothstep(fx - ix);
            const double ty = smoothstep(fy - iy);
            const double top = node(ix, iy) + tx * (node(ix + 1, iy) - node(ix, iy));
            const double bottom = node(ix, iy + 1) + tx * (node(ix + 1, iy + 1) - node(ix, iy + 1));
            const double noise = top + ty * (bottom - top);
            // Radial window keeps the blob away from the border.
            const double rho = std::hypot((x - cx) / (0.45 * dims.width), (y - cy) / (0.45 * dims.height));
            const double value = 0.5 * noise + 0.5 * (1.0 - rho);
            mask.at(x, y) = value > 0.5 ? 1 : 0;
        }
    }
    return fill_holes(largest_component(mask, Connectivity::eight));
}

Shape mask_shape(BinaryMap mask) {
    if (count_true(mask) == 0) throw Error(Errc::degenerate_shape, "empty mask");
    BinaryMap skeleton = thin(skeletonize_binary(mask));
    if (count_true(skeleton) == 0) throw Error(Errc::degenerate_shape, "mask has no skeleton");
    return Shape{std::move(mask), std::move(skeleton)};
}

}  // namespace

BinaryMap rasterize_path(GridDims dims, const std::vector<Point>& vertices, bool closed) {
    if (vertices.empty()) throw Error(Errc::degenerate_shape, "no vertices");
    require_inside(dims, vertices);
    std::vector<Point> raw;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) bresenham(vertices[i], vertices[i + 1], raw);
    if (vertices.size() == 1) raw.push_back(vertices.front());
    if (closed && vertices.size() > 2) bresenham(vertices.back(), vertices.front(), raw);
    if (closed && raw.size() > 1 && raw.back() == raw.front()) raw.pop_back();

    // Drop pixels whose predecessor and successor already touch.
    std::vector<Point> path;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const bool has_next = i + 1 < raw.size() || closed;
        if (!path.empty() && has_next && raw.size() > 3) {
            const Point& next = i + 1 < raw.size() ? raw[i + 1] : path.front();
            if (touching(path.back(), next) && !(path.back() == next)) continue;
        }
        path.push_back(raw[i]);
    }
    if (closed && path.size() > 3 && touching(path.back(), path[1])) path.erase(path.begin());

    BinaryMap map(dims);
    for (const Point& p : path) map.at(p) = 1;
    return map;
}

BinaryMap thin(const BinaryMap& input) {
    BinaryMap map = input;
    const int w = map.width();
    const int h = map.height();
    auto px = [&](int x, int y) -> int { return map.dims().contains(x, y) ? map.at(x, y) : 0; };
    std::vector<std::size_t> doomed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            doomed.clear();
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    if (!map.at(x, y)) continue;
                    // P2..P9 clockwise from north.
                    const int n[8] = {px(x, y - 1), px(x + 1, y - 1), px(x + 1, y), px(x + 1, y + 1),
                                      px(x, y + 1), px(x - 1, y + 1), px(x - 1, y), px(x - 1, y - 1)};
                    int b = 0;
                    int a = 0;
                    for (int k = 0; k < 8; ++k) {
                        b += n[k];
                        if (n[k] == 0 && n[(k + 1) % 8] == 1) ++a;
                    }
                    if (b < 2 || b > 6 || a != 1) continue;
                    const bool cond = pass == 0 ? (n[0] * n[2] * n[4] == 0 && n[2] * n[4] * n[6] == 0)
                                                : (n[0] * n[2] * n[6] == 0 && n[0] * n[4] * n[6] == 0);
                    if (cond) doomed.push_back(map.dims().index(x, y));
                }
            }
            for (std::size_t i : doomed) map[i] = 0;
            changed = changed || !doomed.empty();
        }
    }
    return map;
}

Shape make_shape(const ShapeSpec& spec) {
    const GridDims dims = spec.dims;
    switch (spec.kind) {
        case ShapeKind::line: {
            if (spec.points.size() != 2) throw Error(Errc::degenerate_shape, "line needs exactly two endpoints");
            if (spec.points[0] == spec.points[1]) throw Error(Errc::degenerate_shape, "zero-length line");
            return Shape{std::nullopt, rasterize_path(dims, spec.points, false)};
        }
        case ShapeKind::polyline: {
            if (spec.points.size() < 2) throw Error(Errc::degenerate_shape, "polyline needs >= 2 vertices");
            const bool moves = std::any_of(spec.points.begin(), spec.points.end(),
                                           [&](const Point& p) { return !(p == spec.points.front()); });
            if (!moves) throw Error(Errc::degenerate_shape, "zero-length polyline");
            return Shape{std::nullopt, rasterize_path(dims, spec.points, false)};
        }
        case ShapeKind::ellipse: {
            if (spec.radius_x < 1.0 || spec.radius_y < 1.0) throw Error(Errc::degenerate_shape, "ellipse radius < 1");
            const int samples = static_cast<int>(std::ceil(8.0 * (spec.radius_x + spec.radius_y)));
            std::vector<Point> pts;
            for (int i = 0; i < samples; ++i) {
                const double t = 2.0 * std::numbers::pi * i / samples;
                const Point p{static_cast<int>(std::lround(spec.center.x + spec.radius_x * std::cos(t))),
                              static_cast<int>(std::lround(spec.center.y + spec.radius_y * std::sin(t)))};
                if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
            }
            return Shape{std::nullopt, rasterize_path(dims, pts, true)};
        }
        case ShapeKind::rectangle: {
            const Point a = spec.corner;
            const Point b{a.x + spec.rect_width - 1, a.y + spec.rect_height - 1};
            if (spec.rect_width < 1 || spec.rect_height < 1) throw Error(Errc::degenerate_shape, "empty rectangle");
            require_inside(dims, {a, b});
            BinaryMap mask(dims);
            for (int y = a.y; y <= b.y; ++y) {
                for (int x = a.x; x <= b.x; ++x) mask.at(x, y) = 1;
            }
            return mask_shape(std::move(mask));
        }
        case ShapeKind::disk: {
            if (spec.radius_x < 0.0) throw Error(Errc::degenerate_shape, "negative radius");
            require_inside(dims, {spec.center});
            BinaryMap mask(dims);
            const double r2 = spec.radius_x * spec.radius_x;
            for (int y = 0; y < dims.height; ++y) {
                for (int x = 0; x < dims.width; ++x) {
                    const double dx = x - spec.center.x;
                    const double dy = y - spec.center.y;
                    mask.at(x, y) = dx * dx + dy * dy <= r2 ? 1 : 0;
                }
            }
            return mask_shape(std::move(mask));
        }
        case ShapeKind::blob: return mask_shape(blob_mask(spec));
    }
    throw Error(Errc::degenerate_shape, "unknown shape kind");
}

ShapeSpec random_shape_spec(ShapeKind kind, GridDims dims, std::uint64_t seed) {
    std::uint64_t counter = 0;
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(seed, kParamStream, counter++); };
    const double w = dims.width;
    const double h = dims.height;
    auto random_point = [&](double margin) {
        return Point{static_cast<int>(uniform(margin * w, (1.0 - margin) * w - 1.0)),
                     static_cast<int>(uniform(margin * h, (1.0 - margin) * h - 1.0))};
    };
    auto distance = [](Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); };

    ShapeSpec spec;
    spec.kind = kind;
    spec.dims = dims;
    spec.seed = seed;
    spec.center = Point{dims.width / 2, dims.height / 2};
    const double min_len = 0.3 * std::min(w, h);
    switch (kind) {
        case ShapeKind::line: {
            Point a = random_point(0.1);
            Point b = random_point(0.1);
            while (distance(a, b) < min_len) b = random_point(0.1);
            spec.points = {a, b};
            break;
        }
        case ShapeKind::polyline: {
            const int n = 3 + static_cast<int>(uniform(0.0, 2.999));
            spec.points.push_back(random_point(0.1));
            for (int tries = 0; static_cast<int>(spec.points.size()) < n && tries < 500; ++tries) {
                const Point p = random_point(0.1);
                if (distance(p, spec.points.back()) >= min_len && keeps_clear(spec.points, p)) spec.points.push_back(p);
            }
            break;
        }
        case ShapeKind::ellipse:
            spec.center = Point{static_cast<int>(uniform(0.4 * w, 0.6 * w)), static_cast<int>(uniform(0.4 * h, 0.6 * h))};
            spec.radius_x = uniform(0.15 * w, 0.3 * w);
            spec.radius_y = uniform(0.15 * h, 0.3 * h);
            break;
        case ShapeKind::rectangle:
            spec.rect_width = static_cast<int>(uniform(0.35 * w, 0.7 * w));
            spec.rect_height = static_cast<int>(uniform(0.15 * h, 0.35 * h));
            spec.corner = Point{static_cast<int>(uniform(0.05 * w, w - spec.rect_width - 0.05 * w)),
                                static_cast<int>(uniform(0.05 * h, h - spec.rect_height - 0.05 * h))};
            break;
        case ShapeKind::disk:
            spec.center = Point{static_cast<int>(uniform(0.4 * w, 0.6 * w)), static_cast<int>(uniform(0.4 * h, 0.6 * h))};
            spec.radius_x = uniform(0.15, 0.3) * std::min(w, h);
            break;
        case ShapeKind::blob:
            spec.blob_cell = std::min(w, h) / 4.0;
            break;
    }
    return spec;
}

void PerturbSpec::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(Errc::invalid_argument, "sigma must be >= 0");
    if (patch_size < 1) throw Error(Errc::invalid_argument, "patch size must be >= 1");
    if (dropout_patches < 0) throw Error(Errc::invalid_argument, "patch count must be >= 0");
    if (!(angle_jitter_deg >= 0.0) || !std::isfinite(angle_jitter_deg)) {
        throw Error(Errc::invalid_argument, "angle jitter must be >= 0");
    }
}

FluxField perturb_flux(const FluxField& flux, const PerturbSpec& spec) {
    spec.validate();
    FluxField out = flux;
    const double jitter_rad = spec.angle_jitter_deg * std::numbers::pi / 180.0;
    for (std::size_t i = 0; i < flux.size(); ++i) {
        const Vec2f v = flux[i];
        const bool nonzero = v.x != 0.0f || v.y != 0.0f;
        double x = v.x;
        double y = v.y;
        if (spec.sigma > 0.0 && (nonzero || spec.noise_on_zero)) {
            x += spec.sigma * standard_normal(spec.seed, kNoiseStream, 2 * i);
            y += spec.sigma * standard_normal(spec.seed, kNoiseStream, 2 * i + 1);
        }
        if (jitter_rad > 0.0 && nonzero) {
            const double a = jitter_rad * standard_normal(spec.seed, kJitterStream, i);
            const double c = std::cos(a);
            const double s = std::sin(a);
            const double rx = c * x - s * y;
            y = s * x + c * y;
            x = rx;
        }
        out.set(i, Vec2f{static_cast<float>(x), static_cast<float>(y)});
    }

    const GridDims dims = flux.dims();
    const int size_x = std::min(spec.patch_size, dims.width);
    const int size_y = std::min(spec.patch_size, dims.height);
    for (int k = 0; k < spec.dropout_patches; ++k) {
        const auto kk = static_cast<std::uint64_t>(k);
        const int x0 = static_cast<int>(uniform01(spec.seed, kPatchStream, 2 * kk) * (dims.width - size_x + 1));
        const int y0 = static_cast<int>(uniform01(spec.seed, kPatchStream, 2 * kk + 1) * (dims.height - size_y + 1));
        for (int y = y0; y < y0 + size_y; ++y) {
            for (int x = x0; x < x0 + size_x; ++x) out.set(x, y, Vec2f{});
        }
    }
    return out;
}

std::vector<SweepRow> sweep_context_radius(const BinaryMap& skeleton, const std::vector<int>& radii,
                                           const RecoveryParams& params, MatchTolerance tol) {
    if (radii.empty()) throw Error(Errc::invalid_argument, "empty radius list");
    params.validate();
    std::vector<SweepRow> rows;
    for (int r : radii) {
        const FluxField flux = compute_context_flux(skeleton, ContextRadius(r));
        const BinaryMap recovered = recover_skeleton(flux, params);
        rows.push_back({r, match_with_tolerance(recovered, skeleton, tol).f_measure()});
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "r,f_measure\n";
    for (const auto& row : rows) out << row.r << ',' << row.f_measure << '\n';
    return out.str();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows, int indent) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) arr.push_back({{"r", row.r}, {"f_measure", row.f_measure}});
    return nlohmann::ordered_json{{"sweep", arr}}.dump(indent);
}

}  // namespace fluxskel
