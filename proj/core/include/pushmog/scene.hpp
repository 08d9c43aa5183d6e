#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pushmog/geometry.hpp"

namespace pushmog {

using ObjectId = int;

inline constexpr int kMinSides = 3;
inline constexpr int kMaxSides = 8;
inline constexpr int kPlacementRetryBudget = 10'000;

// A catalog entry: polygon in its body frame, centroid at the origin.
class ObjectShape {
public:
    // Validates that the polygon is already centered (within kGeomEps).
    ObjectShape(std::string name, ConvexPolygon polygon);
    // Shifts the vertices so the centroid sits at the origin.
    static ObjectShape centered(std::string name, std::vector<Vec2> vertices);

    const std::string& name() const { return name_; }
    const ConvexPolygon& polygon() const { return polygon_; }
    int side_count() const { return static_cast<int>(polygon_.size()); }
    double circumradius() const { return pushmog::circumradius(polygon_, {}); }

    bool operator==(const ObjectShape&) const = default;

private:
    std::string name_;
    ConvexPolygon polygon_;
};

// Minimum single-object grasp width d*_o, modeled as the polygon's minimum width.
double min_grasp_diameter(const ObjectShape& shape);

class ObjectInstance {
public:
    ObjectInstance(ObjectId id, ObjectShape shape, Pose2 pose);

    ObjectId id() const { return id_; }
    const ObjectShape& shape() const { return shape_; }
    const Pose2& pose() const { return pose_; }
    const ConvexPolygon& world_polygon() const { return world_; }
    // M_o, centroid of the world polygon.
    const Point2& centroid() const { return centroid_; }
    // d*_o
    double min_grasp_diameter() const { return min_grasp_diameter_; }

    ObjectInstance with_pose(const Pose2& pose) const;

    bool operator==(const ObjectInstance&) const = default;

private:
    ObjectId id_;
    ObjectShape shape_;
    Pose2 pose_;
    ConvexPolygon world_;
    Point2 centroid_;
    double min_grasp_diameter_;
};

struct GripperParams {
    double max_opening = 0.085;          // d^(gr), Robotiq 2F-85 stroke
    double fork_opening_fraction = 0.30;  // jaw opening used for fork pushes
    double finger_radius = 0.004;
    double jaw_depth = 0.08;              // finger extent along the jaw line

    void validate() const;
    double fork_opening() const { return fork_opening_fraction * max_opening; }
    bool operator==(const GripperParams&) const = default;
};

class Scene {
public:
    Scene() = default;
    // Validates every scene invariant; throws ValidationError.
    Scene(Rect workspace, std::vector<ObjectInstance> objects, GripperParams gripper,
          std::uint64_t seed);

    const Rect& workspace() const { return workspace_; }
    const std::vector<ObjectInstance>& objects() const { return objects_; }
    const GripperParams& gripper() const { return gripper_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return objects_.size(); }
    bool empty() const { return objects_.empty(); }

    const ObjectInstance* find(ObjectId id) const;
    // Throws UnknownObject.
    const ObjectInstance& at(ObjectId id) const;

    // Replaces one object's pose without re-validating the whole scene;
    // callers (the push simulator) are responsible for keeping it collision free.
    Scene with_pose(ObjectId id, const Pose2& pose) const;
    Scene without(std::span<const ObjectId> ids) const;

    // Re-checks all invariants; throws ValidationError naming the first violation.
    void validate() const;

    bool operator==(const Scene&) const = default;

private:
    Rect workspace_{0.0, 0.0, 0.6, 0.6};
    std::vector<ObjectInstance> objects_;
    GripperParams gripper_;
    std::uint64_t seed_ = 0;
};

inline Rect default_workspace() { return {0.0, 0.0, 0.6, 0.6}; }

// Places every catalog shape exactly once on non-overlapping circles of the
// catalog's largest circumradius, in a seeded random order and orientation.
// Throws WorkspaceTooSmall when a shape cannot be placed within the retry budget.
Scene generate_scene(std::span<const ObjectShape> catalog, const Rect& workspace,
                     const GripperParams& gripper, std::uint64_t seed);

inline constexpr std::string_view kSceneSchema = "push_mog_scene/1";
inline constexpr std::string_view kCatalogSchema = "push_mog_catalog/1";

std::string save_scene(const Scene& scene);
// Throws ValidationError on schema violations or broken scene invariants.
Scene load_scene(std::string_view text);

std::vector<ObjectShape> load_catalog(std::string_view text);
std::string save_catalog(std::span<const ObjectShape> catalog);

// Whole-file helpers; throw ValidationError if the file cannot be read.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace pushmog
