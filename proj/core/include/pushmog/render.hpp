#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pushmog/clustering.hpp"
#include "pushmog/grasping.hpp"
#include "pushmog/harness.hpp"
#include "pushmog/pushing.hpp"
#include "pushmog/scene.hpp"

namespace pushmog {

struct RenderOptions {
    std::string title;
    std::vector<Cluster> clusters;  // members are tinted per cluster
    std::vector<PushPlan> pushes;   // drawn as arrows with fork fingertips
    std::vector<GraspPlan> grasps;  // drawn as jaw footprints
    double pixels_per_meter = 1000.0;
};

// Top-down SVG of the workspace, world y pointing up.
std::string render_svg(const Scene& scene, const RenderOptions& options = {});

// Named debug renders of a scene: "initial", "clusters" (first clustering
// with planned pushes) and "consolidated" (every cluster pushed together,
// noise free, with its planned grasp).
std::vector<std::pair<std::string, std::string>> render_stages(const Scene& scene, const RunConfig& config);

}  // namespace pushmog
