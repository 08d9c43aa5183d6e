#pragma once

#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "pushmog/clustering.hpp"
#include "pushmog/geometry.hpp"
#include "pushmog/scene.hpp"

namespace pushmog {

// Default gap left between a pushed object and whatever it is pushed toward.
inline constexpr double kDefaultContactClearance = 0.002;
// The simulator stops a blocked object this far short of first contact.
inline constexpr double kSimContactTolerance = 1e-6;

// One fork push of a single object along a straight line.
struct PushPlan {
    ObjectId object_id = 0;
    Vec2 push_dir;             // unit, toward the cluster's central object
    double push_length = 0.0;  // |v_p|
    PolygonFeature contact_feature;  // on the pushed object, far side from the central object
    Pose2 start_pose;
    Point2 start_centroid;   // M_o
    Point2 target_centroid;  // M'_o = M_o + push_length * push_dir
    double jaw_opening = 0.0;
    Point2 gripper_contact_point;
    double gripper_yaw = 0.0;  // angle of the jaw axis (finger-to-finger line)
};

struct ForkPose {
    Point2 contact_point;  // midpoint between the fingertips at first contact
    double yaw = 0.0;
    double opening = 0.0;
    Point2 left_fingertip;
    Point2 right_fingertip;
};

// Member nearest the cluster centroid (ties: lowest id).
ObjectId central_object(const Cluster& cluster, const Scene& scene);

// Fork-push plans that bring every other member up against the central
// object, in execution order (farthest member first). Each plan is shortened
// so the swept object stops `contact_clearance` short of anything in its way.
std::vector<PushPlan> plan_cluster_pushes(const Cluster& cluster, const Scene& scene,
                                          double contact_clearance = kDefaultContactClearance);

// Gripper placement for a plan: jaws open to the fork fraction, jaw line
// perpendicular to the push. Throws GripperConfigError when the opening
// cannot fit both fingertips.
ForkPose fork_pose(const PushPlan& plan, const GripperParams& gripper);

// Noise-free post-push pose, used to plan the grasp without re-perceiving.
Pose2 predict_post_push(const PushPlan& plan);

struct NoiseModel {
    double angle_sigma = 3.0 * std::numbers::pi / 180.0;  // radians
    double length_sigma = 0.05;                            // fraction of the length
};

// A concrete draw from a NoiseModel. The default value is the identity.
struct PushPerturbation {
    double angle = 0.0;
    double length_factor = 1.0;
};

PushPerturbation sample_perturbation(const NoiseModel& noise, std::mt19937_64& rng);

enum class StopReason { plan_complete, contact, workspace_boundary };

struct PushOutcome {
    ObjectId object_id = 0;
    Point2 achieved_centroid;
    StopReason stopped_by = StopReason::plan_complete;
    std::optional<ObjectId> blocker;  // set when stopped_by == contact
    double traveled = 0.0;
    Vec2 direction;                   // executed (possibly perturbed) direction
    double commanded_length = 0.0;    // length after perturbation, before clipping
};

// Quasi-static, rotation-free push: the object slides along the (perturbed)
// direction until the commanded length, first contact, or the workspace edge.
// Throws UnknownObject if the plan's object is not in the scene.
std::pair<Scene, PushOutcome> simulate_push(const Scene& scene, const PushPlan& plan,
                                            const PushPerturbation& perturbation = {});

// Rigid translation shared by the simulator and trace replay.
Scene apply_translation(const Scene& scene, ObjectId id, Vec2 direction, double distance);

}  // namespace pushmog
