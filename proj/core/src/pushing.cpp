#include "pushmog/pushing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "pushmog/error.hpp"

namespace pushmog {

ObjectId central_object(const Cluster& cluster, const Scene& scene) {
    if (cluster.member_ids.empty()) {
        throw InvalidState("central_object of an empty cluster");
    }
    ObjectId best = cluster.member_ids.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (const ObjectId id : cluster.member_ids) {
        const double d = distance(scene.at(id).centroid(), cluster.centroid);
        if (d < best_d) {
            best_d = d;
            best = id;
        }
    }
    return best;
}

ForkPose fork_pose(const PushPlan& plan, const GripperParams& gripper) {
    ForkPose pose;
    pose.opening = gripper.fork_opening();
    if (pose.opening < 2.0 * gripper.finger_radius) {
        throw GripperConfigError("fork opening is narrower than two fingertips");
    }
    pose.contact_point = plan.contact_feature.reference - plan.push_dir * gripper.finger_radius;
    pose.yaw = normalize_angle(std::atan2(plan.push_dir.y, plan.push_dir.x) + std::numbers::pi / 2.0);
    const Vec2 jaw_axis = perp(plan.push_dir);
    pose.left_fingertip = pose.contact_point + jaw_axis * (0.5 * pose.opening);
    pose.right_fingertip = pose.contact_point - jaw_axis * (0.5 * pose.opening);
    return pose;
}

std::vector<PushPlan> plan_cluster_pushes(const Cluster& cluster, const Scene& scene,
                                          double contact_clearance) {
    std::vector<PushPlan> plans;
    if (cluster.size() < 2) {
        return plans;
    }
    const ObjectId m = central_object(cluster, scene);
    const Point2 center_m = scene.at(m).centroid();

    std::vector<ObjectId> order;
    for (const ObjectId id : cluster.member_ids) {
        if (id != m) {
            order.push_back(id);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](ObjectId a, ObjectId b) {
        return distance(scene.at(a).centroid(), center_m) > distance(scene.at(b).centroid(), center_m);
    });

    // Later plans see earlier members at their predicted positions.
    Scene working = scene;
    for (const ObjectId id : order) {
        const ObjectInstance& obj = working.at(id);
        const ConvexPolygon& moving = obj.world_polygon();
        const Vec2 dir = normalized(center_m - obj.centroid());

        double length = directional_gap(moving, working.at(m).world_polygon(), dir) - contact_clearance;
        if (!(length > kGeomEps)) {
            continue;
        }
        for (const auto& other : working.objects()) {
            if (other.id() == id || other.id() == m) {
                continue;
            }
            length = std::min(length, directional_gap(moving, other.world_polygon(), dir) - contact_clearance);
        }
        length = std::min(length, gap_to_boundary(moving, working.workspace(), dir));
        if (!(length > kGeomEps)) {
            continue;
        }

        PushPlan plan;
        plan.object_id = id;
        plan.push_dir = dir;
        plan.push_length = length;
        plan.contact_feature = line_features(moving, obj.centroid(), -dir).far;
        plan.start_pose = obj.pose();
        plan.start_centroid = obj.centroid();
        plan.target_centroid = obj.centroid() + dir * length;
        const ForkPose fork = fork_pose(plan, working.gripper());
        plan.jaw_opening = fork.opening;
        plan.gripper_contact_point = fork.contact_point;
        plan.gripper_yaw = fork.yaw;
        plans.push_back(plan);

        working = working.with_pose(id, predict_post_push(plan));
    }
    return plans;
}

Pose2 predict_post_push(const PushPlan& plan) {
    return plan.start_pose.translated(plan.push_dir * plan.push_length);
}

PushPerturbation sample_perturbation(const NoiseModel& noise, std::mt19937_64& rng) {
    PushPerturbation p;
    if (noise.angle_sigma > 0.0) {
        p.angle = std::normal_distribution<double>(0.0, noise.angle_sigma)(rng);
    }
    if (noise.length_sigma > 0.0) {
        p.length_factor = 1.0 + std::normal_distribution<double>(0.0, noise.length_sigma)(rng);
    }
    return p;
}

Scene apply_translation(const Scene& scene, ObjectId id, Vec2 direction, double distance) {
    if (distance == 0.0) {
        return scene;
    }
    const ObjectInstance& obj = scene.at(id);
    return scene.with_pose(id, obj.pose().translated(direction * distance));
}

std::pair<Scene, PushOutcome> simulate_push(const Scene& scene, const PushPlan& plan,
                                            const PushPerturbation& perturbation) {
    const ObjectInstance& obj = scene.at(plan.object_id);

    PushOutcome out;
    out.object_id = plan.object_id;
    out.direction = perturbation.angle == 0.0 ? plan.push_dir : rotate(plan.push_dir, perturbation.angle);
    out.commanded_length = std::max(0.0, plan.push_length * perturbation.length_factor);
    out.achieved_centroid = obj.centroid();
    if (out.commanded_length == 0.0) {
        return {scene, out};
    }

    const ConvexPolygon& moving = obj.world_polygon();
    double travel = out.commanded_length;
    for (const auto& other : scene.objects()) {
        if (other.id() == obj.id()) {
            continue;
        }
        const double reach = directional_gap(moving, other.world_polygon(), out.direction) - kSimContactTolerance;
        if (reach < travel) {
            travel = reach;
            out.stopped_by = StopReason::contact;
            out.blocker = other.id();
        }
    }
    const double wall = gap_to_boundary(moving, scene.workspace(), out.direction);
    if (wall < travel) {
        travel = wall;
        out.stopped_by = StopReason::workspace_boundary;
        out.blocker.reset();
    }
    out.traveled = std::max(0.0, travel);
    out.achieved_centroid = obj.centroid() + out.direction * out.traveled;
    return {apply_translation(scene, obj.id(), out.direction, out.traveled), out};
}

}  // namespace pushmog
