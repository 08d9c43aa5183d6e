#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pushmog/geometry.hpp"

using namespace pushmog;
using Catch::Matchers::WithinAbs;

namespace {

ConvexPolygon square(Vec2 c, double side) {
    const double h = side / 2;
    return ConvexPolygon({{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}});
}

ConvexPolygon regular(int n, double side, Vec2 c = {}) {
    const double r = side / (2.0 * std::sin(std::numbers::pi / n));
    std::vector<Vec2> v;
    for (int k = 0; k < n; ++k) {
        v.push_back(c + unit_from_angle(2.0 * std::numbers::pi * k / n) * r);
    }
    return ConvexPolygon(v);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("polygon construction rejects bad input", "[geometry]") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), InvalidShape);
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), InvalidShape);  // clockwise
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), InvalidShape);  // collinear
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}), InvalidShape);  // concave
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), InvalidShape);
    CHECK_NOTHROW(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}));
}

TEST_CASE("pose rotation is wrapped to [-pi, pi)", "[geometry]") {
    CHECK_THAT(Pose2({}, 3.5 * std::numbers::pi).rotation, WithinAbs(-0.5 * std::numbers::pi, 1e-12));
    CHECK(Pose2({}, std::numbers::pi).rotation == -std::numbers::pi);
    const double kept = 0.123456789;
    CHECK(Pose2({}, kept).rotation == kept);
}

TEST_CASE("centroid", "[geometry]") {
    const Point2 sq = centroid(ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK_THAT(sq.x, WithinAbs(0.5, 1e-12));
    CHECK_THAT(sq.y, WithinAbs(0.5, 1e-12));
    const Point2 tri = centroid(ConvexPolygon({{0, 0}, {3, 0}, {0, 3}}));
    CHECK_THAT(tri.x, WithinAbs(1.0, 1e-12));
    CHECK_THAT(tri.y, WithinAbs(1.0, 1e-12));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const auto p = oracle::random_convex(rng, {0.3, -0.2}, 0.05);
        const ConvexPolygon poly(p);
        const Point2 c = centroid(poly);
        const Vec2 ref = oracle::fan_centroid(p);
        CHECK_THAT(c.x, WithinAbs(ref.x, 1e-9));
        CHECK_THAT(c.y, WithinAbs(ref.y, 1e-9));

        // Equivariance under translation and vertex-list rotation.
        const Point2 moved = centroid(poly.translated({1.5, -2.0}));
        CHECK_THAT(moved.x, WithinAbs(c.x + 1.5, 1e-9));
        CHECK_THAT(moved.y, WithinAbs(c.y - 2.0, 1e-9));
        auto rolled = p;
        std::rotate(rolled.begin(), rolled.begin() + 1, rolled.end());
        const Point2 r = centroid(ConvexPolygon(rolled));
        CHECK_THAT(r.x, WithinAbs(c.x, 1e-12));
        CHECK_THAT(r.y, WithinAbs(c.y, 1e-12));
    }
}

TEST_CASE("min_width", "[geometry]") {
    CHECK_THAT(min_width(square({}, 2.0)).width, WithinAbs(2.0, 1e-12));
    CHECK_THAT(min_width(regular(3, 2.0)).width, WithinAbs(std::sqrt(3.0), 1e-12));
    const auto pent = regular(5, 1.0);
    CHECK_THAT(min_width(pent).width, WithinAbs(oracle::edge_normal_width(pent.vertices()), 1e-9));

    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const ConvexPolygon poly(oracle::random_convex(rng, {}, 1.0));
        const WidthResult w = min_width(poly);
        CHECK_THAT(w.width, WithinAbs(oracle::edge_normal_width(poly.vertices()), 1e-9));
        CHECK_THAT(poly.project(w.direction).length(), WithinAbs(w.width, 1e-9));

        // Achieved on an edge normal.
        bool on_normal = false;
        for (std::size_t e = 0; e < poly.size(); ++e) {
            on_normal |= std::abs(dot(normalized(poly.edge(e)), w.direction)) < 1e-9;
        }
        CHECK(on_normal);
        CHECK_THAT(min_width(poly.transformed(Pose2({0.2, 0.1}, 1.1))).width, WithinAbs(w.width, 1e-9));
    }
}

TEST_CASE("polygons_intersect", "[geometry]") {
    CHECK_FALSE(polygons_intersect(square({0, 0}, 1), square({6, 0}, 1), 0.0));
    CHECK(polygons_intersect(square({0, 0}, 1), square({0.2, 0.1}, 1), 0.0));
    CHECK(polygons_intersect(square({0, 0}, 1), square({0, 0}, 1), 0.0));
    // Gap 0.01 against clearance 0.02.
    const auto a = square({0, 0}, 1);
    const auto b = square({1.01, 0}, 1);
    CHECK_THAT(oracle::separation(a.vertices(), b.vertices()), WithinAbs(0.01, 1e-12));
    CHECK(polygons_intersect(a, b, 0.02));
    CHECK_FALSE(polygons_intersect(a, b, 0.005));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> off(-2.5, 2.5);
    std::uniform_real_distribution<double> clr(0.0, 0.5);
    for (int i = 0; i < 200; ++i) {
        const auto pa = oracle::random_convex(rng, {}, 1.0);
        const auto pb = oracle::random_convex(rng, {off(rng), off(rng)}, 1.0);
        const ConvexPolygon ca(pa);
        const ConvexPolygon cb(pb);
        const double c = clr(rng);
        const double sep = oracle::separation(pa, pb);
        if (std::abs(sep - c) > 1e-7) {
            CHECK(polygons_intersect(ca, cb, c) == (sep < c));
        }
        CHECK(polygons_intersect(ca, cb, c) == polygons_intersect(cb, ca, c));
        CHECK(polygons_intersect(ca, cb, 0.0) == oracle::sat_overlap(pa, pb));
        if (sep > 0.0) {
            CHECK_THAT(signed_distance(ca, cb), WithinAbs(sep, 1e-9));
        }
    }
}

TEST_CASE("directional_gap", "[geometry]") {
    CHECK_THAT(directional_gap(square({0, 0}, 1), square({3, 0}, 1), {1, 0}), WithinAbs(2.0, 1e-12));
    CHECK(directional_gap(square({0, 0}, 1), square({3, 0}, 1), {-1, 0}) == kInf);
    CHECK(directional_gap(square({0, 0}, 1), square({3, 3}, 1), {1, 0}) == kInf);
    CHECK_THROWS_AS(directional_gap(square({0, 0}, 1), square({0.5, 0}, 1), {1, 0}), InvalidState);
    CHECK_THROWS_AS(directional_gap(square({0, 0}, 1), square({3, 0}, 1), {2, 0}), InvalidState);

    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    int checked = 0;
    while (checked < 40) {
        const auto pm = oracle::random_convex(rng, {}, 1.0);
        const Vec2 at = unit_from_angle(ang(rng)) * 3.2;
        const auto po = oracle::random_convex(rng, at, 1.0);
        if (oracle::sat_overlap(pm, po, false)) {
            continue;
        }
        ++checked;
        const ConvexPolygon m(pm);
        const ConvexPolygon o(po);
        const Vec2 dir = unit_from_angle(std::atan2(at.y, at.x) + 0.6 * std::sin(ang(rng)));
        const double t = directional_gap(m, o, dir);
        const double ref = oracle::stepping_gap(pm, po, dir);
        if (ref == kInf) {
            CHECK(t == kInf);
            continue;
        }
        CHECK_THAT(t, WithinAbs(ref, 2e-4));
        CHECK_THAT(directional_gap(o, m, dir * -1.0), WithinAbs(t, 1e-9));

        // Touching after the translation, intersecting with any positive clearance.
        const ConvexPolygon moved = m.translated(dir * t);
        CHECK_FALSE(polygons_intersect(moved, o, 0.0));
        CHECK(polygons_intersect(moved, o, 2e-6));
    }
}

TEST_CASE("separable", "[geometry]") {
    const std::vector<Point2> a{{0, 0}};
    const std::vector<Point2> b{{1, 0}};
    CHECK(separable(a, b));
    const std::vector<Point2> shared{{1, 0}, {2, 2}};
    CHECK_FALSE(separable(b, shared));

    std::vector<Point2> ga;
    std::vector<Point2> gb;
    for (int i = 0; i < 4; ++i) {
        (i % 2 == 0 ? ga : gb).push_back({static_cast<double>(i), 0.0});
        (i % 2 == 0 ? gb : ga).push_back({static_cast<double>(i), 1.0});
    }
    CHECK(separable(ga, gb) == oracle::sweep_separable(ga, gb));
    CHECK_FALSE(separable(ga, gb));

    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, 5);
    for (int i = 0; i < 300; ++i) {
        std::vector<Point2> pa;
        std::vector<Point2> pb;
        const double shift = 1.2 * u(rng);
        for (int k = count(rng); k > 0; --k) {
            pa.push_back({u(rng), u(rng)});
        }
        for (int k = count(rng); k > 0; --k) {
            pb.push_back({u(rng) + shift, u(rng)});
        }
        const bool s = separable(pa, pb);
        CHECK(s == oracle::sweep_separable(pa, pb));
        CHECK(s == separable(pb, pa));
        if (!s) {
            pa.push_back({u(rng), u(rng)});
            CHECK_FALSE(separable(pa, pb));
        }
    }
}

TEST_CASE("line_features", "[geometry]") {
    const auto sq = square({0, 0}, 1);
    const LineFeatures f = line_features(sq, {0, 0}, {1, 0});
    CHECK(f.far.kind == FeatureKind::edge);
    CHECK_THAT(f.far.crossing.x, WithinAbs(0.5, 1e-12));
    CHECK_THAT(f.far.crossing.y, WithinAbs(0.0, 1e-12));
    CHECK_THAT(f.far.reference.x, WithinAbs(0.5, 1e-12));
    CHECK_THAT(f.near.crossing.x, WithinAbs(-0.5, 1e-12));
    CHECK(f.near.kind == FeatureKind::edge);

    const ConvexPolygon diamond({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    const LineFeatures d = line_features(diamond, {0, 0}, {1, 0});
    CHECK(d.far.kind == FeatureKind::vertex);
    CHECK(d.far.index == 0);
    CHECK_THAT(d.far.reference.x, WithinAbs(1.0, 1e-12));

    CHECK_THROWS_AS(line_features(sq, {0, 5}, {1, 0}), NoIntersection);

    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 100; ++i) {
        const auto p = oracle::random_convex(rng, {}, 1.0);
        const ConvexPolygon poly(p);
        const Point2 through = centroid(poly);
        const Vec2 dir = unit_from_angle(ang(rng));
        Vec2 exit;
        REQUIRE(oracle::line_exit(p, through, dir, exit));
        const LineFeatures lf = line_features(poly, through, dir);
        CHECK_THAT(lf.far.crossing.x, WithinAbs(exit.x, 1e-9));
        CHECK_THAT(lf.far.crossing.y, WithinAbs(exit.y, 1e-9));
        CHECK(lf.far.index < poly.size());
        if (lf.far.kind == FeatureKind::edge) {
            CHECK(lf.far.reference == poly.edge_midpoint(lf.far.index));
        } else {
            CHECK(lf.far.reference == poly.vertex(lf.far.index));
        }
    }
}

TEST_CASE("convex hull and boundary gap", "[geometry]") {
    const auto hull = convex_hull({{0, 0}, {1, 0}, {0.5, 0.5}, {1, 1}, {0, 1}, {0.5, 0}});
    CHECK(hull.size() == 4);
    const Rect ws{0, 0, 1, 1};
    CHECK_THAT(gap_to_boundary(square({0.5, 0.5}, 0.2), ws, {1, 0}), WithinAbs(0.4, 1e-12));
    CHECK(ws.contains(square({0.5, 0.5}, 0.2)));
    CHECK_FALSE(ws.contains(square({0.95, 0.5}, 0.2)));
}
