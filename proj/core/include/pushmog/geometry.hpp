#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pushmog {

// Tolerance for geometric predicates, in meters.
inline constexpr double kGeomEps = 1e-9;
// Line crossings closer than this to a vertex are reported as vertex features.
inline constexpr double kVertexFeatureTol = 1e-6;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(Vec2 o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr bool operator==(const Vec2&) const = default;
};

using Point2 = Vec2;

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
// Counter-clockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 unit_from_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}
// Throws InvalidState for a (near) zero vector.
Vec2 normalized(Vec2 v);

// Wraps an angle into [-pi, pi).
double normalize_angle(double angle);

struct Pose2 {
    Vec2 translation;
    double rotation = 0.0;  // radians, kept in [-pi, pi)

    Pose2() = default;
    Pose2(Vec2 t, double theta) : translation(t), rotation(normalize_angle(theta)) {}

    Vec2 apply(Vec2 body_point) const { return rotate(body_point, rotation) + translation; }
    Pose2 translated(Vec2 delta) const { return Pose2(translation + delta, rotation); }
    bool operator==(const Pose2&) const = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

// Strictly convex polygon with counter-clockwise vertices. Validated on
// construction; concave, clockwise, or degenerate input throws InvalidShape.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Vec2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    // Edge i runs from vertex(i) to vertex(i + 1).
    Vec2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }
    Vec2 edge_midpoint(std::size_t i) const { return (vertex(i) + vertex(i + 1)) * 0.5; }
    double area() const;

    ConvexPolygon transformed(const Pose2& pose) const;
    ConvexPolygon translated(Vec2 delta) const;
    Interval project(Vec2 axis) const;

    bool operator==(const ConvexPolygon&) const = default;

private:
    struct Trusted {};
    ConvexPolygon(std::vector<Vec2> vertices, Trusted) : vertices_(std::move(vertices)) {}

    std::vector<Vec2> vertices_;
};

Point2 centroid(const ConvexPolygon& poly);

struct WidthResult {
    double width = 0.0;
    // Unit normal of the edge that realizes the width, pointing into the polygon.
    Vec2 direction;
};

// Rotating calipers over edge/antipodal-vertex pairs.
WidthResult min_width(const ConvexPolygon& poly);

// Largest distance from `center` to any vertex.
double circumradius(const ConvexPolygon& poly, Point2 center);

// Andrew's monotone chain. Collinear and duplicate points are dropped; the
// result is counter-clockwise and may have fewer than three points.
std::vector<Point2> convex_hull(std::vector<Point2> points);

// Distance between the polygons when disjoint, minus the penetration depth
// when they overlap (so touching polygons give ~0).
double signed_distance(const ConvexPolygon& a, const ConvexPolygon& b);

// True iff the separation is below `clearance`. With clearance 0 this is a
// strict overlap test: boundaries touching within kGeomEps do not count.
bool polygons_intersect(const ConvexPolygon& a, const ConvexPolygon& b, double clearance = 0.0);

// Largest t >= 0 such that `moving` translated by t * dir keeps its interior
// disjoint from `obstacle`; +infinity when the sweep never reaches it.
// Throws InvalidState if the shapes already overlap.
double directional_gap(const ConvexPolygon& moving, const ConvexPolygon& obstacle, Vec2 dir);

// True iff some line strictly separates the two point sets.
bool separable(std::span<const Point2> a, std::span<const Point2> b);

enum class FeatureKind { edge, vertex };

struct PolygonFeature {
    FeatureKind kind = FeatureKind::edge;
    // Edge midpoint, or the vertex itself.
    Point2 reference;
    // Edge index (edge i = vertex i -> vertex i+1) or vertex index.
    std::size_t index = 0;
    // Where the query line actually crosses the boundary.
    Point2 crossing;
};

struct LineFeatures {
    PolygonFeature far;   // exit feature, in the direction of line_dir
    PolygonFeature near;  // entry feature
};

// Boundary features where the infinite line through `line_point` along
// `line_dir` crosses `poly`. Throws NoIntersection if the line misses the
// interior.
LineFeatures line_features(const ConvexPolygon& poly, Point2 line_point, Vec2 line_dir);

struct Rect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool contains(const ConvexPolygon& poly, double tol = kGeomEps) const;
    bool operator==(const Rect&) const = default;
};

// Largest t >= 0 such that `poly` translated by t * dir stays inside `bounds`.
double gap_to_boundary(const ConvexPolygon& poly, const Rect& bounds, Vec2 dir);

// Rectangle centered at `center`: `half_along` along the unit `axis`,
// `half_across` along perp(axis).
ConvexPolygon oriented_rect(Point2 center, Vec2 axis, double half_along, double half_across);

}  // namespace pushmog
