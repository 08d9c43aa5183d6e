#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pushmog/clustering.hpp"
#include "pushmog/grasping.hpp"
#include "pushmog/pushing.hpp"
#include "pushmog/scene.hpp"

namespace pushmog {

enum class PolicyKind { frictional_sog, mog_only, push_mog };

// CLI spellings: "sog", "mog", "push-mog".
std::string_view policy_name(PolicyKind kind);
// Accepts the CLI spellings and the enum names; throws ValidationError.
PolicyKind parse_policy(std::string_view text);

// Seconds per action; only the picks-per-hour estimates use these.
struct TimeModel {
    double t_push = 4.0;
    double t_grasp = 6.0;
    double t_transport = 10.75;  // one round trip to the bin
};

struct RunConfig {
    ClusterConfig cluster;
    double contact_clearance = kDefaultContactClearance;
    std::optional<NoiseModel> noise;
    GraspConfig grasp;
    // Trips (and planning rounds without a trip) allowed per initial object.
    int budget_per_object = 10;
    TimeModel time;
};

struct PushEvent {
    PushPlan plan;
    PushOutcome outcome;
};

struct GraspEvent {
    GraspPlan plan;
    TripRecord trip;
};

using Event = std::variant<PushEvent, GraspEvent>;

struct RunResult {
    PolicyKind policy = PolicyKind::push_mog;
    std::uint64_t seed = 0;
    std::vector<TripRecord> trips;
    int total_pushes = 0;
    int objects_transported = 0;
    double opt = 0.0;  // 0 when no trip was made
    double modeled_seconds = 0.0;
    bool complete = true;
    std::vector<Event> event_trace;
    Scene initial_scene;
    Scene final_scene;
};

// Cluster, push, grasp, re-perceive, until the workspace is clear.
RunResult run_push_mog(const Scene& scene, const RunConfig& config, std::uint64_t seed);
// One object per trip, in a seeded random order; blocked objects are retried later.
RunResult run_frictional_sog(const Scene& scene, const RunConfig& config, std::uint64_t seed);
// Multi-object grasps on the scene as found, single grasps otherwise; never pushes.
RunResult run_mog_only(const Scene& scene, const RunConfig& config, std::uint64_t seed);

RunResult run_policy(PolicyKind kind, const Scene& scene, const RunConfig& config,
                     std::uint64_t seed);

// Re-executes a recorded trace from its initial scene.
Scene replay(const Scene& initial, std::span<const Event> trace, const GraspConfig& grasp = {});

struct RunRow {
    PolicyKind policy = PolicyKind::push_mog;
    std::uint64_t seed = 0;
    int trips = 0;
    int pushes = 0;
    int objects = 0;
    double opt = 0.0;
    double modeled_seconds = 0.0;
    bool complete = true;
};

struct PolicySummary {
    PolicyKind policy = PolicyKind::push_mog;
    int runs = 0;
    int incomplete_runs = 0;
    double opt_mean = 0.0;
    double opt_std = 0.0;  // sample standard deviation, 0 for a single run
    double pph_mean = 0.0;
    double pushes_mean = 0.0;
};

struct MetricsReport {
    std::vector<RunRow> rows;  // sorted by (policy, seed)
    std::vector<PolicySummary> summaries;
};

struct ExperimentConfig {
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::vector<PolicyKind> policies{PolicyKind::frictional_sog, PolicyKind::mog_only,
                                     PolicyKind::push_mog};
    Rect workspace = default_workspace();
    GripperParams gripper;
    RunConfig run;
    // When set, runs.csv, summary.json and per-scene SVGs are written here.
    std::optional<std::string> out_dir;
};

// Every policy on every seeded scene. Incomplete runs are reported, not fatal.
MetricsReport run_experiment(std::span<const ObjectShape> catalog, const ExperimentConfig& config);

// Builds the report (rows sorted, summaries aggregated) from finished runs
// given in any order.
MetricsReport aggregate(std::span<const RunResult> runs, const TimeModel& time);

std::string report_csv(const MetricsReport& report);
std::string report_summary_json(const MetricsReport& report);
std::string report_table(const MetricsReport& report);

}  // namespace pushmog
