#include "pushmog/trace.hpp"

#include <nlohmann/json.hpp>

#include "pushmog/error.hpp"

namespace pushmog {

using nlohmann::json;

namespace {

json vec(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 to_vec(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ValidationError("expected an [x, y] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string_view stop_name(StopReason s) {
    switch (s) {
        case StopReason::plan_complete:
            return "plan-complete";
        case StopReason::contact:
            return "contact";
        case StopReason::workspace_boundary:
            return "workspace-boundary";
    }
    return "plan-complete";
}

StopReason parse_stop(const std::string& s) {
    if (s == "contact") {
        return StopReason::contact;
    }
    if (s == "workspace-boundary") {
        return StopReason::workspace_boundary;
    }
    if (s == "plan-complete") {
        return StopReason::plan_complete;
    }
    throw ValidationError("unknown stop reason '" + s + "'");
}

json push_plan_json(const PushPlan& p) {
    return {{"object_id", p.object_id},
            {"push_dir", vec(p.push_dir)},
            {"push_length", p.push_length},
            {"contact_feature",
             {{"kind", p.contact_feature.kind == FeatureKind::edge ? "edge" : "vertex"},
              {"index", p.contact_feature.index},
              {"reference", vec(p.contact_feature.reference)},
              {"crossing", vec(p.contact_feature.crossing)}}},
            {"start_pose",
             {{"x", p.start_pose.translation.x}, {"y", p.start_pose.translation.y}, {"theta", p.start_pose.rotation}}},
            {"start_centroid", vec(p.start_centroid)},
            {"target_centroid", vec(p.target_centroid)},
            {"jaw_opening", p.jaw_opening},
            {"gripper_contact_point", vec(p.gripper_contact_point)},
            {"gripper_yaw", p.gripper_yaw}};
}

PushPlan push_plan_from(const json& j) {
    PushPlan p;
    p.object_id = j.at("object_id").get<int>();
    p.push_dir = to_vec(j.at("push_dir"));
    p.push_length = j.at("push_length").get<double>();
    const json& f = j.at("contact_feature");
    p.contact_feature.kind = f.at("kind").get<std::string>() == "vertex" ? FeatureKind::vertex : FeatureKind::edge;
    p.contact_feature.index = f.at("index").get<std::size_t>();
    p.contact_feature.reference = to_vec(f.at("reference"));
    p.contact_feature.crossing = to_vec(f.at("crossing"));
    const json& sp = j.at("start_pose");
    p.start_pose = Pose2({sp.at("x").get<double>(), sp.at("y").get<double>()}, sp.at("theta").get<double>());
    p.start_centroid = to_vec(j.at("start_centroid"));
    p.target_centroid = to_vec(j.at("target_centroid"));
    p.jaw_opening = j.at("jaw_opening").get<double>();
    p.gripper_contact_point = to_vec(j.at("gripper_contact_point"));
    p.gripper_yaw = j.at("gripper_yaw").get<double>();
    return p;
}

}  // namespace

std::string trace_to_json(const RunResult& r) {
    json events = json::array();
    for (const Event& e : r.event_trace) {
        if (const auto* push = std::get_if<PushEvent>(&e)) {
            const PushOutcome& o = push->outcome;
            events.push_back({{"type", "push"},
                              {"plan", push_plan_json(push->plan)},
                              {"outcome",
                               {{"object_id", o.object_id},
                                {"achieved_centroid", vec(o.achieved_centroid)},
                                {"stopped_by", stop_name(o.stopped_by)},
                                {"blocker", o.blocker ? json(*o.blocker) : json(nullptr)},
                                {"traveled", o.traveled},
                                {"direction", vec(o.direction)},
                                {"commanded_length", o.commanded_length}}}});
        } else {
            const auto& g = std::get<GraspEvent>(e);
            events.push_back({{"type", "grasp"},
                              {"plan",
                               {{"axis_dir", vec(g.plan.axis_dir)},
                                {"center", vec(g.plan.center)},
                                {"closing_width", g.plan.closing_width},
                                {"target_ids", g.plan.target_ids}}},
                              {"trip",
                               {{"trip_index", g.trip.trip_index},
                                {"grasped_ids", g.trip.grasped_ids},
                                {"push_count_before", g.trip.push_count_before},
                                {"objects_transported", g.trip.objects_transported}}}});
        }
    }
    json trips = json::array();
    for (const auto& t : r.trips) {
        trips.push_back({{"trip_index", t.trip_index},
                         {"grasped_ids", t.grasped_ids},
                         {"push_count_before", t.push_count_before},
                         {"objects_transported", t.objects_transported}});
    }
    json doc{{"schema", kTraceSchema},
             {"policy", policy_name(r.policy)},
             {"seed", r.seed},
             {"complete", r.complete},
             {"opt", r.opt},
             {"total_pushes", r.total_pushes},
             {"objects_transported", r.objects_transported},
             {"modeled_seconds", r.modeled_seconds},
             {"trips", std::move(trips)},
             {"events", std::move(events)},
             {"initial_scene", json::parse(save_scene(r.initial_scene))},
             {"final_scene", json::parse(save_scene(r.final_scene))}};
    return doc.dump(2) + "\n";
}

TraceDocument load_trace(std::string_view text) {
    try {
        const json j = json::parse(text);
        if (j.at("schema").get<std::string>() != kTraceSchema) {
            throw ValidationError("unsupported trace schema, expected " + std::string(kTraceSchema));
        }
        TraceDocument doc;
        doc.policy = parse_policy(j.at("policy").get<std::string>());
        doc.seed = j.at("seed").get<std::uint64_t>();
        doc.initial_scene = load_scene(j.at("initial_scene").dump());
        doc.final_scene = load_scene(j.at("final_scene").dump());
        for (const json& e : j.at("events")) {
            const auto type = e.at("type").get<std::string>();
            if (type == "push") {
                PushEvent ev;
                ev.plan = push_plan_from(e.at("plan"));
                const json& o = e.at("outcome");
                ev.outcome.object_id = o.at("object_id").get<int>();
                ev.outcome.achieved_centroid = to_vec(o.at("achieved_centroid"));
                ev.outcome.stopped_by = parse_stop(o.at("stopped_by").get<std::string>());
                if (!o.at("blocker").is_null()) {
                    ev.outcome.blocker = o.at("blocker").get<int>();
                }
                ev.outcome.traveled = o.at("traveled").get<double>();
                ev.outcome.direction = to_vec(o.at("direction"));
                ev.outcome.commanded_length = o.at("commanded_length").get<double>();
                doc.events.emplace_back(std::move(ev));
            } else if (type == "grasp") {
                GraspEvent ev;
                const json& p = e.at("plan");
                ev.plan.axis_dir = to_vec(p.at("axis_dir"));
                ev.plan.center = to_vec(p.at("center"));
                ev.plan.closing_width = p.at("closing_width").get<double>();
                ev.plan.target_ids = p.at("target_ids").get<std::vector<ObjectId>>();
                const json& t = e.at("trip");
                ev.trip.trip_index = t.at("trip_index").get<int>();
                ev.trip.grasped_ids = t.at("grasped_ids").get<std::vector<ObjectId>>();
                ev.trip.push_count_before = t.at("push_count_before").get<int>();
                ev.trip.objects_transported = t.at("objects_transported").get<int>();
                doc.events.emplace_back(std::move(ev));
            } else {
                throw ValidationError("unknown trace event type '" + type + "'");
            }
        }
        return doc;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed trace: ") + e.what());
    }
}

}  // namespace pushmog
