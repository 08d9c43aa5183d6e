#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pushmog/clustering.hpp"
#include "pushmog/geometry.hpp"
#include "pushmog/scene.hpp"

namespace pushmog {

struct GraspConfig {
    int angle_samples = 181;          // jaw directions sampled over [0, pi)
    double capture_tolerance = 0.001;  // slack around the closed jaw span
};

// A parallel-jaw grasp seen from above. The jaws close along `axis_dir`
// and meet the targets at center +/- closing_width / 2.
struct GraspPlan {
    Vec2 axis_dir;
    Point2 center;
    double closing_width = 0.0;
    std::vector<ObjectId> target_ids;  // ascending

    bool operator==(const GraspPlan&) const = default;
};

struct TripRecord {
    int trip_index = 0;
    std::vector<ObjectId> grasped_ids;  // ascending
    int push_count_before = 0;
    int objects_transported = 0;

    bool operator==(const TripRecord&) const = default;
};

using PoseOverrides = std::map<ObjectId, Pose2>;

// Minimum-extent multi-object grasp on the cluster's (predicted) layout.
// Directions whose extent exceeds the gripper, whose footprint is deeper
// than the jaws, or whose jaws would land on a non-target object are
// rejected; returns nullopt when none survive.
std::optional<GraspPlan> plan_multi_grasp(const Cluster& cluster, const Scene& scene,
                                          const PoseOverrides& predicted_poses,
                                          const GripperParams& gripper,
                                          const GraspConfig& config = {});

// Grasp across the object's minimum width, or the narrowest clear axis if a
// neighbour blocks a jaw there; nullopt if no axis is clear.
std::optional<GraspPlan> plan_single_grasp(const ObjectInstance& object, const Scene& scene,
                                           const GripperParams& gripper);

// Closes the jaws and lifts away every object lying entirely inside the
// closed span. Missing everything is still a trip.
std::pair<Scene, TripRecord> execute_grasp(const Scene& scene, const GraspPlan& plan,
                                           const GraspConfig& config = {}, int trip_index = 0,
                                           int push_count_before = 0);

// Footprints of the two closed jaws, for collision checks and rendering.
std::array<ConvexPolygon, 2> jaw_footprints(const GraspPlan& plan, const GripperParams& gripper);

// Region whose contents are captured when the jaws close.
ConvexPolygon capture_region(const GraspPlan& plan, const GripperParams& gripper,
                             const GraspConfig& config = {});

}  // namespace pushmog
