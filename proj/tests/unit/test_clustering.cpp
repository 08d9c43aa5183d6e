#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pushmog/clustering.hpp"

using namespace pushmog;
using Catch::Matchers::WithinAbs;

namespace {

ObjectSummary summary(ObjectId id, Vec2 c, double d) { return {id, c, d}; }

std::vector<std::vector<int>> ids_of(const std::vector<Cluster>& clusters) {
    std::vector<std::vector<int>> out;
    for (const auto& c : clusters) {
        out.push_back(c.member_ids);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ObjectShape square_shape(double side) {
    const double h = side / 2;
    return ObjectShape::centered("sq", {{-h, -h}, {h, -h}, {h, h}, {-h, h}});
}

}  // namespace

TEST_CASE("hierarchical_cluster", "[clustering]") {
    const std::vector<ObjectSummary> two{summary(0, {0, 0}, 0.01), summary(1, {1, 0}, 0.01)};
    CHECK(hierarchical_cluster(two, 0.1).size() == 2);
    CHECK(hierarchical_cluster(two, 2.0).size() == 1);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ObjectSummary> objs;
        std::vector<Vec2> pts;
        std::vector<int> ids;
        for (int i = 0; i < 8; ++i) {
            objs.push_back(summary(i * 3 + 1, {u(rng), u(rng)}, 0.01));
            pts.push_back(objs.back().centroid);
            ids.push_back(objs.back().id);
        }
        const double threshold = 0.05 + 0.3 * u(rng);
        CHECK(ids_of(hierarchical_cluster(objs, threshold)) == oracle::naive_agglomerate(pts, ids, threshold));
    }
}

TEST_CASE("is_valid boundary", "[clustering]") {
    const GripperParams g;
    CHECK(is_valid(make_cluster({0}, std::vector{summary(0, {}, 0.02)}), g));
    const std::vector<ObjectSummary> three{summary(0, {}, 0.03), summary(1, {}, 0.03), summary(2, {}, 0.03)};
    CHECK_FALSE(is_valid(make_cluster({0, 1, 2}, three), g));
    Cluster exact;
    exact.member_ids = {0};
    exact.grasp_diameter = g.max_opening;
    CHECK(is_valid(exact, g));
}

TEST_CASE("make_cluster caches", "[clustering]") {
    const std::vector<ObjectSummary> objs{summary(2, {1, 0}, 0.02), summary(5, {0, 1}, 0.03)};
    const Cluster c = make_cluster({5, 2}, objs);
    CHECK(c.member_ids == std::vector<ObjectId>{2, 5});
    CHECK_THAT(c.grasp_diameter, WithinAbs(0.05, 1e-15));
    CHECK_THAT(c.centroid.x, WithinAbs(0.5, 1e-15));
    CHECK_THAT(c.centroid.y, WithinAbs(0.5, 1e-15));
}

TEST_CASE("split_cluster", "[clustering]") {
    SECTION("two objects") {
        const std::vector<ObjectSummary> objs{summary(0, {0, 0}, 0.02), summary(1, {1, 0.3}, 0.05)};
        const SplitResult r = split_cluster(make_cluster({0, 1}, objs), objs);
        CHECK(r.first.size() == 1);
        CHECK(r.second.size() == 1);
        CHECK_THAT(r.weight, WithinAbs(0.03, 1e-15));
    }
    SECTION("square corners balance perfectly") {
        const std::vector<ObjectSummary> objs{summary(0, {0, 0}, 0.03), summary(1, {1, 0}, 0.03),
                                              summary(2, {1, 1}, 0.03), summary(3, {0, 1}, 0.03)};
        const SplitResult r = split_cluster(make_cluster({0, 1, 2, 3}, objs), objs);
        CHECK(r.first.size() == 2);
        CHECK(r.second.size() == 2);
        CHECK(r.weight == 0.0);
        CHECK_FALSE(r.used_fallback);
    }
    SECTION("matches the exhaustive grid oracle") {
        std::mt19937_64 rng(22);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const SplitOptions options;
        const auto grid = theta_grid(options);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<ObjectSummary> objs;
            for (int i = 0; i < 6; ++i) {
                objs.push_back(summary(i, {u(rng), u(rng)}, 0.01 + 0.04 * u(rng)));
            }
            const Cluster c = make_cluster({0, 1, 2, 3, 4, 5}, objs);
            const SplitResult r = split_cluster(c, objs, options);
            CHECK(r.weight == oracle::exhaustive_split_weight(objs, c.centroid, grid));
            CHECK_THAT(r.first.grasp_diameter + r.second.grasp_diameter, WithinAbs(c.grasp_diameter, 1e-12));
            CHECK(r.first.size() + r.second.size() == c.size());
        }
    }
    SECTION("collinear members still split under the narrow range") {
        const std::vector<ObjectSummary> objs{summary(0, {0, 0}, 0.03), summary(1, {0, 1}, 0.03),
                                              summary(2, {0, 2}, 0.03)};
        SplitOptions narrow;
        narrow.range = ThetaRange::quarter_turn;
        narrow.theta_samples = 3;
        const auto grid = theta_grid(narrow);
        CHECK_THAT(grid.front(), WithinAbs(-std::numbers::pi / 4, 1e-15));
        CHECK_THAT(grid.back(), WithinAbs(std::numbers::pi / 4, 1e-15));
        // A line through the mean always has members on both sides or on it.
        const SplitResult r = split_cluster(make_cluster({0, 1, 2}, objs), objs, narrow);
        CHECK_FALSE(r.used_fallback);
        CHECK(r.first.size() + r.second.size() == 3);
        CHECK(r.first.size() >= 1);
        CHECK(r.second.size() >= 1);
    }
    SECTION("rejects singletons") {
        const std::vector<ObjectSummary> objs{summary(0, {0, 0}, 0.03)};
        CHECK_THROWS_AS(split_cluster(make_cluster({0}, objs), objs), InvalidState);
    }
}

TEST_CASE("cluster_scene", "[clustering]") {
    const Rect ws = default_workspace();
    SECTION("single object") {
        const Scene s(ws, {ObjectInstance(0, square_shape(0.02), Pose2({0.3, 0.3}, 0))}, {}, 0);
        const ClusterSet cs = cluster_scene(s);
        REQUIRE(cs.clusters.size() == 1);
        CHECK(cs.inseparable_pairs.empty());
    }
    SECTION("far apart large objects stay singletons") {
        const Scene s(ws,
                      {ObjectInstance(0, square_shape(0.05), Pose2({0.1, 0.1}, 0)),
                       ObjectInstance(1, square_shape(0.05), Pose2({0.5, 0.5}, 0))},
                      {}, 0);
        ClusterConfig cfg;
        cfg.merge_threshold = 0.01;
        CHECK(cluster_scene(s, cfg).clusters.size() == 2);
    }
    SECTION("ungraspable object") {
        const Scene s(ws, {ObjectInstance(7, square_shape(0.1), Pose2({0.3, 0.3}, 0))}, {}, 0);
        try {
            cluster_scene(s);
            FAIL("expected UngraspableObject");
        } catch (const UngraspableObject& e) {
            CHECK(e.object_id() == 7);
        }
    }
    SECTION("generated scenes are partitioned into valid clusters") {
        const auto catalog = load_catalog(read_text_file(PUSHMOG_DEFAULT_CATALOG));
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const Scene s = generate_scene(catalog, ws, {}, seed);
            const ClusterSet cs = cluster_scene(s);
            std::multiset<ObjectId> seen;
            for (const auto& c : cs.clusters) {
                double d = 0.0;
                for (const ObjectId id : c.member_ids) {
                    seen.insert(id);
                    d += s.at(id).min_grasp_diameter();
                }
                CHECK(d <= s.gripper().max_opening);
                CHECK(is_valid(c, s.gripper()));
            }
            CHECK(seen.size() == s.size());
            CHECK(std::set<ObjectId>(seen.begin(), seen.end()).size() == s.size());

            // The report lists exactly the pairs whose centroids are not separable.
            std::size_t expected = 0;
            for (std::size_t i = 0; i < cs.clusters.size(); ++i) {
                for (std::size_t j = i + 1; j < cs.clusters.size(); ++j) {
                    std::vector<Vec2> a;
                    std::vector<Vec2> b;
                    for (const ObjectId id : cs.clusters[i].member_ids) {
                        a.push_back(s.at(id).centroid());
                    }
                    for (const ObjectId id : cs.clusters[j].member_ids) {
                        b.push_back(s.at(id).centroid());
                    }
                    expected += oracle::sweep_separable(a, b) ? 0 : 1;
                }
            }
            CHECK(cs.inseparable_pairs.size() == expected);
        }
    }
}
