#include "pushmog/harness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "pushmog/error.hpp"
#include "pushmog/metrics.hpp"
#include "pushmog/render.hpp"
#include "pushmog/trace.hpp"

namespace pushmog {

namespace {

RunResult start_run(PolicyKind policy, const Scene& scene, std::uint64_t seed) {
    RunResult r;
    r.policy = policy;
    r.seed = seed;
    r.initial_scene = scene;
    return r;
}

int action_budget(const Scene& scene, const RunConfig& config) {
    return std::max(1, config.budget_per_object * static_cast<int>(scene.size()));
}

void finish_run(RunResult& r, Scene final_scene, const RunConfig& config) {
    r.final_scene = std::move(final_scene);
    r.complete = r.final_scene.empty();
    r.objects_transported = 0;
    for (const auto& t : r.trips) {
        r.objects_transported += t.objects_transported;
    }
    r.opt = r.trips.empty() ? 0.0 : compute_opt(r);
    r.modeled_seconds = modeled_seconds(r.total_pushes, static_cast<int>(r.trips.size()), config.time);
}

Scene record_grasp(RunResult& r, const Scene& scene, const GraspPlan& plan, const RunConfig& config,
                   int pushes_before) {
    auto [after, trip] =
        execute_grasp(scene, plan, config.grasp, static_cast<int>(r.trips.size()), pushes_before);
    r.trips.push_back(trip);
    r.event_trace.emplace_back(GraspEvent{plan, std::move(trip)});
    return std::move(after);
}

std::size_t pick_index(std::size_t n, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// First member (in a seeded random order) that admits a single grasp.
std::optional<GraspPlan> single_fallback(const Cluster& cluster, const Scene& scene,
                                         const PoseOverrides& predicted, std::mt19937_64& rng) {
    std::vector<ObjectId> members = cluster.member_ids;
    std::shuffle(members.begin(), members.end(), rng);
    for (const ObjectId id : members) {
        const ObjectInstance& current = scene.at(id);
        const auto it = predicted.find(id);
        const ObjectInstance believed = it == predicted.end() ? current : current.with_pose(it->second);
        if (auto plan = plan_single_grasp(believed, scene, scene.gripper())) {
            return plan;
        }
    }
    return std::nullopt;
}

}  // namespace

std::string_view policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::frictional_sog:
            return "sog";
        case PolicyKind::mog_only:
            return "mog";
        case PolicyKind::push_mog:
            return "push-mog";
    }
    return "unknown";
}

PolicyKind parse_policy(std::string_view text) {
    if (text == "sog" || text == "frictional_sog") {
        return PolicyKind::frictional_sog;
    }
    if (text == "mog" || text == "mog_only") {
        return PolicyKind::mog_only;
    }
    if (text == "push-mog" || text == "push_mog") {
        return PolicyKind::push_mog;
    }
    throw ValidationError("unknown policy '" + std::string(text) + "' (expected sog, mog or push-mog)");
}

RunResult run_push_mog(const Scene& scene, const RunConfig& config, std::uint64_t seed) {
    RunResult r = start_run(PolicyKind::push_mog, scene, seed);
    std::mt19937_64 rng(seed);
    const int budget = action_budget(scene, config);

    Scene current = scene;
    int stalls = 0;
    while (!current.empty() && static_cast<int>(r.trips.size()) < budget && stalls < budget) {
        // Each round starts from the true scene, as a fresh overhead image would.
        const ClusterSet clusters = cluster_scene(current, config.cluster);
        const Cluster& cluster = clusters.clusters[pick_index(clusters.clusters.size(), rng)];

        PoseOverrides predicted;
        int pushes = 0;
        for (const PushPlan& plan : plan_cluster_pushes(cluster, current, config.contact_clearance)) {
            const PushPerturbation noise =
                config.noise ? sample_perturbation(*config.noise, rng) : PushPerturbation{};
            auto [next, outcome] = simulate_push(current, plan, noise);
            current = std::move(next);
            predicted[plan.object_id] = predict_post_push(plan);
            r.event_trace.emplace_back(PushEvent{plan, outcome});
            ++pushes;
        }
        r.total_pushes += pushes;

        auto grasp = plan_multi_grasp(cluster, current, predicted, current.gripper(), config.grasp);
        if (!grasp) {
            grasp = single_fallback(cluster, current, predicted, rng);
        }
        if (!grasp) {
            ++stalls;
            continue;
        }
        current = record_grasp(r, current, *grasp, config, pushes);
    }
    finish_run(r, std::move(current), config);
    return r;
}

RunResult run_frictional_sog(const Scene& scene, const RunConfig& config, std::uint64_t seed) {
    RunResult r = start_run(PolicyKind::frictional_sog, scene, seed);
    std::mt19937_64 rng(seed);
    const int budget = action_budget(scene, config);

    std::vector<ObjectId> ids;
    for (const auto& o : scene.objects()) {
        ids.push_back(o.id());
    }
    std::shuffle(ids.begin(), ids.end(), rng);
    std::deque<ObjectId> queue(ids.begin(), ids.end());

    Scene current = scene;
    std::size_t deferred_in_a_row = 0;
    while (!queue.empty() && static_cast<int>(r.trips.size()) < budget) {
        const ObjectId id = queue.front();
        queue.pop_front();
        const ObjectInstance* obj = current.find(id);
        if (obj == nullptr) {
            continue;
        }
        auto plan = plan_single_grasp(*obj, current, current.gripper());
        if (!plan) {
            queue.push_back(id);
            if (++deferred_in_a_row >= queue.size()) {
                break;  // everything left is blocked
            }
            continue;
        }
        deferred_in_a_row = 0;
        current = record_grasp(r, current, *plan, config, 0);
        std::erase_if(queue, [&](ObjectId q) { return current.find(q) == nullptr; });
    }
    finish_run(r, std::move(current), config);
    return r;
}

RunResult run_mog_only(const Scene& scene, const RunConfig& config, std::uint64_t seed) {
    RunResult r = start_run(PolicyKind::mog_only, scene, seed);
    std::mt19937_64 rng(seed);
    const int budget = action_budget(scene, config);

    Scene current = scene;
    int stalls = 0;
    while (!current.empty() && static_cast<int>(r.trips.size()) < budget && stalls < budget) {
        const ClusterSet clusters = cluster_scene(current, config.cluster);
        const Cluster& cluster = clusters.clusters[pick_index(clusters.clusters.size(), rng)];

        std::optional<GraspPlan> grasp;
        if (cluster.size() > 1) {
            grasp = plan_multi_grasp(cluster, current, {}, current.gripper(), config.grasp);
        }
        if (!grasp) {
            grasp = single_fallback(cluster, current, {}, rng);
        }
        if (!grasp) {
            ++stalls;
            continue;
        }
        current = record_grasp(r, current, *grasp, config, 0);
    }
    finish_run(r, std::move(current), config);
    return r;
}

RunResult run_policy(PolicyKind kind, const Scene& scene, const RunConfig& config, std::uint64_t seed) {
    switch (kind) {
        case PolicyKind::frictional_sog:
            return run_frictional_sog(scene, config, seed);
        case PolicyKind::mog_only:
            return run_mog_only(scene, config, seed);
        case PolicyKind::push_mog:
            return run_push_mog(scene, config, seed);
    }
    throw ValidationError("unknown policy");
}

Scene replay(const Scene& initial, std::span<const Event> trace, const GraspConfig& grasp) {
    Scene scene = initial;
    for (const Event& e : trace) {
        if (const auto* push = std::get_if<PushEvent>(&e)) {
            scene = apply_translation(scene, push->outcome.object_id, push->outcome.direction,
                                      push->outcome.traveled);
        } else {
            scene = execute_grasp(scene, std::get<GraspEvent>(e).plan, grasp).first;
        }
    }
    return scene;
}

MetricsReport aggregate(std::span<const RunResult> runs, const TimeModel& time) {
    MetricsReport report;
    std::map<PolicyKind, std::vector<const RunResult*>> by_policy;
    for (const auto& r : runs) {
        RunRow row;
        row.policy = r.policy;
        row.seed = r.seed;
        row.trips = static_cast<int>(r.trips.size());
        row.pushes = r.total_pushes;
        row.objects = r.objects_transported;
        row.opt = r.opt;
        row.modeled_seconds = r.modeled_seconds;
        row.complete = r.complete;
        report.rows.push_back(row);
        by_policy[r.policy].push_back(&r);
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const RunRow& a, const RunRow& b) {
        return std::tie(a.policy, a.seed) < std::tie(b.policy, b.seed);
    });

    for (const auto& [policy, list] : by_policy) {
        PolicySummary s;
        s.policy = policy;
        s.runs = static_cast<int>(list.size());
        std::vector<const RunResult*> ordered = list;
        std::sort(ordered.begin(), ordered.end(),
                  [](const RunResult* a, const RunResult* b) { return a->seed < b->seed; });
        double pph_sum = 0.0;
        int pph_count = 0;
        for (const auto* r : ordered) {
            s.opt_mean += r->opt;
            s.pushes_mean += r->total_pushes;
            s.incomplete_runs += r->complete ? 0 : 1;
            if (r->objects_transported > 0) {
                pph_sum += estimate_pph(*r, time);
                ++pph_count;
            }
        }
        s.opt_mean /= s.runs;
        s.pushes_mean /= s.runs;
        s.pph_mean = pph_count > 0 ? pph_sum / pph_count : 0.0;
        if (s.runs > 1) {
            double ss = 0.0;
            for (const auto* r : ordered) {
                ss += (r->opt - s.opt_mean) * (r->opt - s.opt_mean);
            }
            s.opt_std = std::sqrt(ss / (s.runs - 1));
        }
        report.summaries.push_back(s);
    }
    return report;
}

std::string report_csv(const MetricsReport& report) {
    std::ostringstream out;
    out << "policy,seed,trips,pushes,objects,opt,modeled_seconds,complete\n";
    out << std::setprecision(17);
    for (const auto& row : report.rows) {
        out << policy_name(row.policy) << ',' << row.seed << ',' << row.trips << ',' << row.pushes << ','
            << row.objects << ',' << row.opt << ',' << row.modeled_seconds << ','
            << (row.complete ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string report_summary_json(const MetricsReport& report) {
    nlohmann::json policies = nlohmann::json::array();
    for (const auto& s : report.summaries) {
        policies.push_back({{"policy", policy_name(s.policy)},
                            {"runs", s.runs},
                            {"incomplete_runs", s.incomplete_runs},
                            {"opt_mean", s.opt_mean},
                            {"opt_std", s.opt_std},
                            {"pushes_mean", s.pushes_mean},
                            {"pph_mean", s.pph_mean}});
    }
    nlohmann::json j{{"schema", "push_mog_summary/1"}, {"policies", std::move(policies)}};
    return j.dump(2) + "\n";
}

std::string report_table(const MetricsReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(10) << "policy" << std::setw(6) << "runs" << std::setw(20)
        << "OpT (mean +- std)" << std::setw(10) << "pushes" << std::setw(10) << "PPH"
        << "incomplete\n";
    out << std::fixed;
    for (const auto& s : report.summaries) {
        std::ostringstream opt;
        opt << std::fixed << std::setprecision(3) << s.opt_mean << " +- " << s.opt_std;
        out << std::setw(10) << policy_name(s.policy) << std::setw(6) << s.runs << std::setw(20)
            << opt.str() << std::setw(10) << std::setprecision(1) << s.pushes_mean << std::setw(10)
            << std::setprecision(1) << s.pph_mean << s.incomplete_runs << '\n';
    }
    return out.str();
}

MetricsReport run_experiment(std::span<const ObjectShape> catalog, const ExperimentConfig& config) {
    if (config.seeds.empty()) {
        throw ValidationError("an experiment needs at least one scene seed");
    }
    if (config.out_dir) {
        std::filesystem::create_directories(*config.out_dir);
    }
    std::vector<RunResult> runs;
    for (const std::uint64_t seed : config.seeds) {
        const Scene scene = generate_scene(catalog, config.workspace, config.gripper, seed);
        for (const PolicyKind policy : config.policies) {
            runs.push_back(run_policy(policy, scene, config.run, seed));
            if (config.out_dir) {
                const auto name = "trace_" + std::string(policy_name(policy)) + "_" + std::to_string(seed) + ".json";
                write_text_file((std::filesystem::path(*config.out_dir) / name).string(), trace_to_json(runs.back()));
            }
        }
        if (config.out_dir) {
            const std::filesystem::path dir(*config.out_dir);
            write_text_file((dir / ("scene_" + std::to_string(seed) + ".json")).string(), save_scene(scene));
            for (const auto& [stage, svg] : render_stages(scene, config.run)) {
                write_text_file((dir / ("scene_" + std::to_string(seed) + "_" + stage + ".svg")).string(), svg);
            }
        }
    }
    MetricsReport report = aggregate(runs, config.run.time);
    if (config.out_dir) {
        const std::filesystem::path dir(*config.out_dir);
        write_text_file((dir / "runs.csv").string(), report_csv(report));
        write_text_file((dir / "summary.json").string(), report_summary_json(report));
    }
    return report;
}

}  // namespace pushmog
