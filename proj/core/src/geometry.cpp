#include "pushmog/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "pushmog/error.hpp"

namespace pushmog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + ab * t);
}

// Signed distance from the origin to a convex hull given as CCW points:
// positive outside, negative (minus the depth) inside. Handles the
// degenerate one- and two-point hulls the hull routine can return.
double origin_signed_distance(const std::vector<Point2>& hull) {
    const Point2 origin{};
    if (hull.size() == 1) {
        return norm(hull[0]);
    }
    if (hull.size() == 2) {
        return point_segment_distance(origin, hull[0], hull[1]);
    }
    bool inside = true;
    double depth = kInf;
    double outside = kInf;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2 a = hull[i];
        const Point2 b = hull[(i + 1) % hull.size()];
        const Vec2 e = b - a;
        const double len = norm(e);
        // Positive when the origin is on the interior (left) side.
        const double s = cross(e, origin - a) / len;
        if (s < 0.0) {
            inside = false;
        }
        depth = std::min(depth, s);
        outside = std::min(outside, point_segment_distance(origin, a, b));
    }
    return inside ? -depth : outside;
}

std::vector<Point2> difference_hull(const ConvexPolygon& a, const ConvexPolygon& b) {
    std::vector<Point2> pts;
    pts.reserve(a.size() * b.size());
    for (const auto& va : a.vertices()) {
        for (const auto& vb : b.vertices()) {
            pts.push_back(va - vb);
        }
    }
    return convex_hull(std::move(pts));
}

void check_unit(Vec2 dir, const char* what) {
    if (!std::isfinite(dir.x) || !std::isfinite(dir.y) || std::abs(norm(dir) - 1.0) > 1e-6) {
        throw InvalidState(std::string(what) + ": direction must be a unit vector");
    }
}

// Parametric clip of the line p + t d against the polygon's half-planes.
struct LineClip {
    double t_in = -kInf;
    double t_out = kInf;
    std::size_t in_edge = 0;
    std::size_t out_edge = 0;
    bool empty = false;
};

LineClip clip_line(const ConvexPolygon& poly, Point2 p, Vec2 d) {
    LineClip clip;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 e = poly.edge(i);
        const Vec2 outward{e.y, -e.x};
        const double nd = dot(outward, d);
        const double c = dot(outward, poly.vertex(i) - p);
        if (std::abs(nd) <= 1e-15 * norm(e)) {
            if (c <= kGeomEps * norm(e)) {
                clip.empty = true;
            }
            continue;
        }
        const double t = c / nd;
        if (nd < 0.0) {
            if (t > clip.t_in) {
                clip.t_in = t;
                clip.in_edge = i;
            }
        } else if (t < clip.t_out) {
            clip.t_out = t;
            clip.out_edge = i;
        }
    }
    if (clip.t_out - clip.t_in <= kGeomEps) {
        clip.empty = true;
    }
    return clip;
}

PolygonFeature classify_crossing(const ConvexPolygon& poly, Point2 crossing, std::size_t edge) {
    PolygonFeature f;
    f.crossing = crossing;
    double best = kInf;
    std::size_t best_vertex = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const double d = distance(poly.vertex(i), crossing);
        if (d < best) {
            best = d;
            best_vertex = i;
        }
    }
    if (best <= kVertexFeatureTol) {
        f.kind = FeatureKind::vertex;
        f.index = best_vertex;
        f.reference = poly.vertex(best_vertex);
    } else {
        f.kind = FeatureKind::edge;
        f.index = edge;
        f.reference = poly.edge_midpoint(edge);
    }
    return f;
}

}  // namespace

Vec2 normalized(Vec2 v) {
    const double n = norm(v);
    if (!(n > kGeomEps)) {
        throw InvalidState("cannot normalize a zero-length vector");
    }
    return v / n;
}

double normalize_angle(double angle) {
    if (angle >= -std::numbers::pi && angle < std::numbers::pi) {
        return angle;  // already wrapped; keep the exact bits
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(angle + std::numbers::pi, two_pi);
    if (a < 0.0) {
        a += two_pi;
    }
    a -= std::numbers::pi;
    // fmod can land exactly on +pi after the shift for inputs just below -pi.
    if (a >= std::numbers::pi) {
        a -= two_pi;
    }
    return a;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw InvalidShape("convex polygon needs at least 3 vertices, got " + std::to_string(n));
    }
    for (const auto& v : vertices_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw InvalidShape("convex polygon has a non-finite vertex");
        }
    }
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = edge(i);
        const Vec2 e1 = edge(i + 1);
        if (norm(e0) <= kGeomEps) {
            throw InvalidShape("convex polygon has repeated vertex " + std::to_string(i));
        }
        if (cross(e0, e1) <= kGeomEps) {
            throw InvalidShape("polygon is not strictly convex and counter-clockwise at vertex " +
                               std::to_string((i + 1) % n));
        }
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    // All left turns but winding more than once (a star) is not convex.
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
        throw InvalidShape("polygon winds more than once");
    }
    if (area() <= kGeomEps * kGeomEps) {
        throw InvalidShape("polygon has no area");
    }
}

double ConvexPolygon::area() const {
    const Vec2 o = vertices_.front();
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
        twice += cross(vertices_[i] - o, vertices_[i + 1] - o);
    }
    return 0.5 * twice;
}

ConvexPolygon ConvexPolygon::transformed(const Pose2& pose) const {
    std::vector<Vec2> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) {
        out.push_back(pose.apply(v));
    }
    return ConvexPolygon(std::move(out), Trusted{});
}

ConvexPolygon ConvexPolygon::translated(Vec2 delta) const {
    std::vector<Vec2> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) {
        out.push_back(v + delta);
    }
    return ConvexPolygon(std::move(out), Trusted{});
}

Interval ConvexPolygon::project(Vec2 axis) const {
    Interval iv{kInf, -kInf};
    for (const auto& v : vertices_) {
        const double p = dot(v, axis);
        iv.lo = std::min(iv.lo, p);
        iv.hi = std::max(iv.hi, p);
    }
    return iv;
}

Point2 centroid(const ConvexPolygon& poly) {
    // Shoelace about the vertex mean keeps the sums well conditioned far
    // from the origin.
    Vec2 mean{};
    for (const auto& v : poly.vertices()) {
        mean += v;
    }
    mean = mean / static_cast<double>(poly.size());

    double twice_area = 0.0;
    Vec2 acc{};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly.vertex(i) - mean;
        const Vec2 b = poly.vertex(i + 1) - mean;
        const double c = cross(a, b);
        twice_area += c;
        acc += (a + b) * c;
    }
    if (!(twice_area > 2.0 * kGeomEps * kGeomEps)) {
        throw InvalidShape("centroid of a degenerate polygon");
    }
    return mean + acc / (3.0 * twice_area);
}

WidthResult min_width(const ConvexPolygon& poly) {
    const std::size_t n = poly.size();
    WidthResult best{kInf, {}};
    std::size_t j = 1;
    auto height = [&](std::size_t edge, std::size_t v) {
        return cross(poly.edge(edge), poly.vertex(v) - poly.vertex(edge)) / norm(poly.edge(edge));
    };
    for (std::size_t i = 0; i < n; ++i) {
        // Advance the caliper while the next vertex is farther from edge i.
        while (height(i, (j + 1) % n) > height(i, j)) {
            j = (j + 1) % n;
        }
        const double h = height(i, j);
        if (h < best.width) {
            best.width = h;
            best.direction = perp(poly.edge(i)) / norm(poly.edge(i));
        }
    }
    if (!(best.width > kGeomEps)) {
        throw InvalidShape("width of a degenerate polygon");
    }
    return best;
}

double circumradius(const ConvexPolygon& poly, Point2 center) {
    double r = 0.0;
    for (const auto& v : poly.vertices()) {
        r = std::max(r, distance(v, center));
    }
    return r;
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
    std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) {
        return points;
    }
    std::vector<Point2> hull(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        const Point2 p = points[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) {
            --k;
        }
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

double signed_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
    // a and b meet exactly where the origin lies in a - b.
    return origin_signed_distance(difference_hull(a, b));
}

bool polygons_intersect(const ConvexPolygon& a, const ConvexPolygon& b, double clearance) {
    if (clearance < 0.0) {
        throw InvalidState("clearance must be non-negative");
    }
    return signed_distance(a, b) < clearance - kGeomEps;
}

double directional_gap(const ConvexPolygon& moving, const ConvexPolygon& obstacle, Vec2 dir) {
    check_unit(dir, "directional_gap");
    // moving + t*dir meets obstacle iff t*dir lies in obstacle - moving.
    const auto hull = difference_hull(obstacle, moving);
    if (origin_signed_distance(hull) < -kGeomEps) {
        throw InvalidState("directional_gap: shapes already overlap");
    }
    double t_in = -kInf;
    double t_out = kInf;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2 a = hull[i];
        const Vec2 e = hull[(i + 1) % hull.size()] - a;
        const double len = norm(e);
        const Vec2 outward = Vec2{e.y, -e.x} / len;
        const double nd = dot(outward, dir);
        const double c = dot(outward, a);
        if (std::abs(nd) <= 1e-15) {
            // Ray parallel to this edge: it must start strictly inside the
            // slab, otherwise it only slides along (or misses) the boundary.
            if (c <= kGeomEps) {
                return kInf;
            }
            continue;
        }
        const double t = c / nd;
        if (nd < 0.0) {
            t_in = std::max(t_in, t);
        } else {
            t_out = std::min(t_out, t);
        }
    }
    if (t_out - t_in <= kGeomEps || t_out <= kGeomEps) {
        return kInf;
    }
    return std::max(t_in, 0.0);
}

bool separable(std::span<const Point2> a, std::span<const Point2> b) {
    if (a.empty() || b.empty()) {
        return true;
    }
    // Strictly separable iff the origin is outside the closed hull of a - b.
    std::vector<Point2> diffs;
    diffs.reserve(a.size() * b.size());
    for (const auto& pa : a) {
        for (const auto& pb : b) {
            diffs.push_back(pa - pb);
        }
    }
    return origin_signed_distance(convex_hull(std::move(diffs))) > kGeomEps;
}

LineFeatures line_features(const ConvexPolygon& poly, Point2 line_point, Vec2 line_dir) {
    check_unit(line_dir, "line_features");
    const LineClip clip = clip_line(poly, line_point, line_dir);
    if (clip.empty) {
        throw NoIntersection("line does not cross the polygon interior");
    }
    LineFeatures out;
    out.far = classify_crossing(poly, line_point + line_dir * clip.t_out, clip.out_edge);
    out.near = classify_crossing(poly, line_point + line_dir * clip.t_in, clip.in_edge);
    return out;
}

bool Rect::contains(const ConvexPolygon& poly, double tol) const {
    for (const auto& v : poly.vertices()) {
        if (v.x < min_x - tol || v.x > max_x + tol || v.y < min_y - tol || v.y > max_y + tol) {
            return false;
        }
    }
    return true;
}

double gap_to_boundary(const ConvexPolygon& poly, const Rect& bounds, Vec2 dir) {
    double t = kInf;
    for (const auto& v : poly.vertices()) {
        if (dir.x > 0.0) {
            t = std::min(t, (bounds.max_x - v.x) / dir.x);
        } else if (dir.x < 0.0) {
            t = std::min(t, (bounds.min_x - v.x) / dir.x);
        }
        if (dir.y > 0.0) {
            t = std::min(t, (bounds.max_y - v.y) / dir.y);
        } else if (dir.y < 0.0) {
            t = std::min(t, (bounds.min_y - v.y) / dir.y);
        }
    }
    return std::max(t, 0.0);
}

ConvexPolygon oriented_rect(Point2 center, Vec2 axis, double half_along, double half_across) {
    const Vec2 u = axis * half_along;
    const Vec2 w = perp(axis) * half_across;
    return ConvexPolygon({center - u - w, center + u - w, center + u + w, center - u + w});
}

}  // namespace pushmog
