#include "pushmog/grasping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pushmog {

namespace {

constexpr double kMinJawThickness = 1e-3;

double jaw_thickness(const GripperParams& gripper) {
    return std::max(2.0 * gripper.finger_radius, kMinJawThickness);
}

struct AxisFit {
    Interval along;   // on the closing axis
    Interval across;  // on the jaw line
};

AxisFit fit(const std::vector<ConvexPolygon>& polys, Vec2 axis) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    AxisFit f{{inf, -inf}, {inf, -inf}};
    const Vec2 across = perp(axis);
    for (const auto& poly : polys) {
        const Interval a = poly.project(axis);
        const Interval c = poly.project(across);
        f.along.lo = std::min(f.along.lo, a.lo);
        f.along.hi = std::max(f.along.hi, a.hi);
        f.across.lo = std::min(f.across.lo, c.lo);
        f.across.hi = std::max(f.across.hi, c.hi);
    }
    return f;
}

GraspPlan plan_from_fit(const AxisFit& f, Vec2 axis, std::vector<ObjectId> targets) {
    GraspPlan plan;
    plan.axis_dir = axis;
    plan.center = axis * f.along.mid() + perp(axis) * f.across.mid();
    plan.closing_width = f.along.length();
    std::sort(targets.begin(), targets.end());
    plan.target_ids = std::move(targets);
    return plan;
}

bool jaws_clear(const GraspPlan& plan, const Scene& scene, const GripperParams& gripper,
                const PoseOverrides& overrides) {
    const auto jaws = jaw_footprints(plan, gripper);
    for (const auto& o : scene.objects()) {
        if (std::binary_search(plan.target_ids.begin(), plan.target_ids.end(), o.id())) {
            continue;
        }
        const auto it = overrides.find(o.id());
        const ConvexPolygon poly =
            it == overrides.end() ? o.world_polygon() : o.shape().polygon().transformed(it->second);
        for (const auto& jaw : jaws) {
            if (polygons_intersect(jaw, poly, 0.0)) {
                return false;
            }
        }
    }
    return true;
}

bool inside_region(const ConvexPolygon& poly, Point2 center, Vec2 axis, double half_along,
                   double half_across) {
    const Vec2 across = perp(axis);
    for (const auto& v : poly.vertices()) {
        const Vec2 d = v - center;
        if (std::abs(dot(d, axis)) > half_along + kGeomEps ||
            std::abs(dot(d, across)) > half_across + kGeomEps) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::array<ConvexPolygon, 2> jaw_footprints(const GraspPlan& plan, const GripperParams& gripper) {
    const double t = jaw_thickness(gripper);
    const double offset = 0.5 * plan.closing_width + 0.5 * t;
    return {oriented_rect(plan.center - plan.axis_dir * offset, plan.axis_dir, 0.5 * t, 0.5 * gripper.jaw_depth),
            oriented_rect(plan.center + plan.axis_dir * offset, plan.axis_dir, 0.5 * t, 0.5 * gripper.jaw_depth)};
}

ConvexPolygon capture_region(const GraspPlan& plan, const GripperParams& gripper,
                             const GraspConfig& config) {
    return oriented_rect(plan.center, plan.axis_dir, 0.5 * plan.closing_width + config.capture_tolerance,
                         0.5 * gripper.jaw_depth + config.capture_tolerance);
}

std::optional<GraspPlan> plan_multi_grasp(const Cluster& cluster, const Scene& scene,
                                          const PoseOverrides& predicted_poses,
                                          const GripperParams& gripper, const GraspConfig& config) {
    if (cluster.member_ids.empty()) {
        return std::nullopt;
    }
    std::vector<ConvexPolygon> members;
    for (const ObjectId id : cluster.member_ids) {
        const ObjectInstance& o = scene.at(id);
        const auto it = predicted_poses.find(id);
        members.push_back(it == predicted_poses.end() ? o.world_polygon()
                                                      : o.shape().polygon().transformed(it->second));
    }

    std::optional<GraspPlan> best;
    const int samples = std::max(config.angle_samples, 1);
    for (int k = 0; k < samples; ++k) {
        const Vec2 axis = unit_from_angle(std::numbers::pi * k / samples);
        const AxisFit f = fit(members, axis);
        if (f.along.length() > gripper.max_opening || f.across.length() > gripper.jaw_depth) {
            continue;
        }
        if (best && !(f.along.length() < best->closing_width)) {
            continue;
        }
        GraspPlan candidate = plan_from_fit(f, axis, cluster.member_ids);
        if (jaws_clear(candidate, scene, gripper, predicted_poses)) {
            best = std::move(candidate);
        }
    }
    return best;
}

std::optional<GraspPlan> plan_single_grasp(const ObjectInstance& object, const Scene& scene,
                                           const GripperParams& gripper) {
    const WidthResult w = min_width(object.world_polygon());
    const AxisFit f = fit({object.world_polygon()}, w.direction);
    if (f.along.length() > gripper.max_opening) {
        return std::nullopt;
    }
    GraspPlan plan = plan_from_fit(f, w.direction, {object.id()});
    // The fit above measures the same extent; keep d*_o itself as the width.
    plan.closing_width = w.width;
    if (jaws_clear(plan, scene, gripper, {})) {
        return plan;
    }
    // Narrowest axis is blocked by a neighbour; take the narrowest clear one.
    Cluster self;
    self.member_ids = {object.id()};
    return plan_multi_grasp(self, scene, {}, gripper, GraspConfig{});
}

std::pair<Scene, TripRecord> execute_grasp(const Scene& scene, const GraspPlan& plan,
                                           const GraspConfig& config, int trip_index,
                                           int push_count_before) {
    const GripperParams& gripper = scene.gripper();
    const double half_along = 0.5 * plan.closing_width + config.capture_tolerance;
    const double half_across = 0.5 * gripper.jaw_depth + config.capture_tolerance;

    TripRecord trip;
    trip.trip_index = trip_index;
    trip.push_count_before = push_count_before;
    for (const auto& o : scene.objects()) {
        if (inside_region(o.world_polygon(), plan.center, plan.axis_dir, half_along, half_across)) {
            trip.grasped_ids.push_back(o.id());
        }
    }
    trip.objects_transported = static_cast<int>(trip.grasped_ids.size());
    return {scene.without(trip.grasped_ids), trip};
}

}  // namespace pushmog
