#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "pushmog/pushmog.hpp"

using namespace pushmog;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<ObjectShape>& catalog() {
    static const auto c = load_catalog(read_text_file(PUSHMOG_DEFAULT_CATALOG));
    return c;
}

ObjectShape square_shape(double side) {
    const double h = side / 2;
    return ObjectShape::centered("sq", {{-h, -h}, {h, -h}, {h, h}, {-h, h}});
}

int transported(const RunResult& r) {
    int n = 0;
    for (const auto& t : r.trips) {
        n += t.objects_transported;
    }
    return n;
}

}  // namespace

TEST_CASE("policy names", "[harness]") {
    for (const auto k : {PolicyKind::frictional_sog, PolicyKind::mog_only, PolicyKind::push_mog}) {
        CHECK(parse_policy(policy_name(k)) == k);
    }
    CHECK(parse_policy("push_mog") == PolicyKind::push_mog);
    CHECK_THROWS_AS(parse_policy("greedy"), ValidationError);
}

TEST_CASE("trivial scenes", "[harness]") {
    const Scene empty(default_workspace(), {}, {}, 0);
    for (const auto k : {PolicyKind::frictional_sog, PolicyKind::mog_only, PolicyKind::push_mog}) {
        const RunResult r = run_policy(k, empty, {}, 1);
        CHECK(r.trips.empty());
        CHECK(r.opt == 0.0);
        CHECK(r.complete);
        CHECK_THROWS_AS(compute_opt(r), UndefinedMetric);
    }
    const Scene one(default_workspace(), {ObjectInstance(0, square_shape(0.02), Pose2({0.3, 0.3}, 0))}, {}, 0);
    const RunResult r = run_push_mog(one, {}, 1);
    CHECK(r.trips.size() == 1);
    CHECK(r.total_pushes == 0);
    CHECK(r.opt == 1.0);
}

TEST_CASE("compute_opt arithmetic", "[harness]") {
    RunResult r;
    for (int i = 0; i < 7; ++i) {
        TripRecord t;
        t.objects_transported = i < 3 ? 2 : 1;
        r.trips.push_back(t);
    }
    CHECK_THAT(compute_opt(r), WithinAbs(10.0 / 7.0, 1e-15));
    r.trips.assign(34, TripRecord{0, {0}, 0, 1});
    CHECK(compute_opt(r) == 1.0);
}

TEST_CASE("mog-only takes naturally adjacent pairs", "[harness]") {
    const Scene s(default_workspace(),
                  {ObjectInstance(0, square_shape(0.03), Pose2({0.3, 0.3}, 0)),
                   ObjectInstance(1, square_shape(0.03), Pose2({0.3305, 0.3}, 0))},
                  {}, 0);
    const RunResult r = run_mog_only(s, {}, 3);
    REQUIRE(r.trips.size() == 1);
    CHECK(r.trips[0].objects_transported == 2);
    CHECK(r.total_pushes == 0);
}

TEST_CASE("policies on generated scenes", "[harness]") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Scene s = generate_scene(catalog(), default_workspace(), {}, seed);

        const RunResult sog = run_frictional_sog(s, {}, seed);
        CHECK(sog.complete);
        CHECK(sog.opt == 1.0);
        CHECK(static_cast<std::size_t>(transported(sog)) == s.size());
        CHECK(trace_to_json(run_frictional_sog(s, {}, seed)) == trace_to_json(sog));

        const RunResult mog = run_mog_only(s, {}, seed);
        CHECK(mog.total_pushes == 0);
        CHECK(mog.complete);

        const RunResult push = run_push_mog(s, {}, seed);
        CHECK(push.complete);
        CHECK(static_cast<std::size_t>(transported(push)) == s.size());
        CHECK(push.objects_transported == transported(push));
        CHECK(push.opt == compute_opt(push));
        CHECK(push.final_scene.empty());
        CHECK(replay(s, push.event_trace) == push.final_scene);
        CHECK(trace_to_json(run_push_mog(s, {}, seed)) == trace_to_json(push));

        // Every round's pushes lie inside one cluster of the scene the round started from.
        const std::span<const Event> events(push.event_trace);
        std::size_t round_start = 0;
        std::set<ObjectId> pushed;
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (const auto* p = std::get_if<PushEvent>(&events[i])) {
                pushed.insert(p->plan.object_id);
                continue;
            }
            if (!pushed.empty()) {
                const Scene state = replay(s, events.first(round_start));
                bool inside_one = false;
                for (const auto& c : cluster_scene(state).clusters) {
                    inside_one = inside_one || std::all_of(pushed.begin(), pushed.end(),
                                                           [&](ObjectId id) { return c.contains(id); });
                }
                CHECK(inside_one);
            }
            pushed.clear();
            round_start = i + 1;
        }
    }
}

TEST_CASE("noisy runs still clear and replay", "[harness]") {
    RunConfig cfg;
    cfg.noise = NoiseModel{};
    const Scene s = generate_scene(catalog(), default_workspace(), {}, 2);
    const RunResult r = run_push_mog(s, cfg, 9);
    CHECK(r.complete);
    CHECK(r.final_scene.empty());
    CHECK(replay(s, r.event_trace) == r.final_scene);
    CHECK(trace_to_json(run_push_mog(s, cfg, 9)) == trace_to_json(r));
}

TEST_CASE("trace document round-trip replays bit-exactly", "[harness]") {
    const Scene s = generate_scene(catalog(), default_workspace(), {}, 4);
    RunConfig cfg;
    cfg.noise = NoiseModel{};
    const RunResult r = run_push_mog(s, cfg, 4);
    const TraceDocument doc = load_trace(trace_to_json(r));
    CHECK(doc.initial_scene == s);
    CHECK(doc.final_scene == r.final_scene);
    CHECK(doc.events.size() == r.event_trace.size());
    CHECK(replay(doc.initial_scene, doc.events) == r.final_scene);
    CHECK_THROWS_AS(load_trace("{\"schema\": \"x\"}"), ValidationError);
}

TEST_CASE("metrics", "[harness]") {
    const TimeModel t;
    CHECK(modeled_seconds(2, 3, t) == 2 * 4.0 + 3 * (6.0 + 10.75));

    RunResult r;
    r.trips.assign(7, TripRecord{0, {0}, 0, 1});
    r.trips[0].objects_transported = 4;
    r.objects_transported = 10;
    r.total_pushes = 3;
    const double seconds = modeled_seconds(3, 7, t);
    CHECK_THAT(estimate_pph(r, t), WithinAbs(3600.0 * 10 / seconds, 1e-9));
    const PickRates pr = pick_rates(r, t);
    CHECK_THAT(pr.trips_per_pick, WithinAbs(0.7, 1e-15));

    CHECK_THAT(pick_time_deficit(250.16, 331.70), WithinAbs(3600.0 / 250.16 - 3600.0 / 331.70, 1e-12));
    CHECK_THAT(*break_even_increment(3.54, 0.26), WithinAbs(3.54 / 0.26, 1e-12));
    CHECK_THAT(transport_time({331.70, 1.01}), WithinAbs(3600.0 / (331.70 * 1.01), 1e-12));
    CHECK_FALSE(break_even_increment(0.0, 0.0).has_value());

    const BreakEven same = break_even_transport_time(r, r, t);
    CHECK(same.deficit_per_pick == 0.0);
    CHECK(same.trip_savings_per_pick == 0.0);
    CHECK_FALSE(same.additional_transport.has_value());
    CHECK_FALSE(same.parity_transport.has_value());
}

TEST_CASE("experiment report", "[harness]") {
    ExperimentConfig one;
    one.seeds = {1};
    one.policies = {PolicyKind::frictional_sog};
    const MetricsReport single = run_experiment(catalog(), one);
    REQUIRE(single.rows.size() == 1);
    REQUIRE(single.summaries.size() == 1);
    CHECK(single.summaries[0].opt_std == 0.0);

    ExperimentConfig cfg;
    cfg.seeds = {2, 1, 3};
    const auto dir = std::filesystem::temp_directory_path() / "pushmog_report_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    cfg.out_dir = dir.string();
    const MetricsReport report = run_experiment(catalog(), cfg);
    REQUIRE(report.rows.size() == 9);
    REQUIRE(report.summaries.size() == 3);
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const auto& a = report.rows[i - 1];
        const auto& b = report.rows[i];
        CHECK(std::tie(a.policy, a.seed) < std::tie(b.policy, b.seed));
    }
    for (const auto& s : report.summaries) {
        std::vector<double> opts;
        for (const auto& row : report.rows) {
            if (row.policy == s.policy) {
                opts.push_back(row.opt);
            }
        }
        const double mean = std::accumulate(opts.begin(), opts.end(), 0.0) / static_cast<double>(opts.size());
        double ss = 0.0;
        for (const double o : opts) {
            ss += (o - mean) * (o - mean);
        }
        CHECK_THAT(s.opt_mean, WithinAbs(mean, 1e-12));
        CHECK_THAT(s.opt_std, WithinAbs(std::sqrt(ss / static_cast<double>(opts.size() - 1)), 1e-12));
    }
    CHECK(std::filesystem::exists(dir / "runs.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(std::filesystem::exists(dir / "scene_1_initial.svg"));
    CHECK(report_csv(report).rfind("policy,seed,trips,pushes,objects,opt,modeled_seconds,complete\n", 0) == 0);

    // Aggregation does not depend on the order runs finish in.
    std::vector<RunResult> runs;
    for (const std::uint64_t seed : {3, 1}) {
        const Scene s = generate_scene(catalog(), default_workspace(), {}, seed);
        runs.push_back(run_push_mog(s, {}, seed));
        runs.push_back(run_mog_only(s, {}, seed));
    }
    std::vector<RunResult> reversed(runs.rbegin(), runs.rend());
    CHECK(report_csv(aggregate(runs, {})) == report_csv(aggregate(reversed, {})));
}

TEST_CASE("svg render", "[harness]") {
    const Scene s = generate_scene(catalog(), default_workspace(), {}, 1);
    const auto stages = render_stages(s, {});
    REQUIRE(stages.size() == 3);
    for (const auto& [name, svg] : stages) {
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
}
