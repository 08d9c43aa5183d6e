#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pushmog/geometry.hpp"
#include "pushmog/scene.hpp"

namespace pushmog {

// What clustering needs to know about one object.
struct ObjectSummary {
    ObjectId id = 0;
    Point2 centroid;        // M_o
    double diameter = 0.0;  // d*_o
};

std::vector<ObjectSummary> summarize(const Scene& scene);

struct Cluster {
    std::vector<ObjectId> member_ids;  // ascending
    double grasp_diameter = 0.0;       // d*_c, sum of member d*_o
    Point2 centroid;                   // M_c, mean of member centroids

    std::size_t size() const { return member_ids.size(); }
    bool contains(ObjectId id) const;
    bool operator==(const Cluster&) const = default;
};

// Builds a cluster from the given members; sums run in ascending id order.
// Throws UnknownObject for ids missing from `objects`.
Cluster make_cluster(std::vector<ObjectId> ids, std::span<const ObjectSummary> objects);

// d*_c <= d^(gr)
bool is_valid(const Cluster& cluster, const GripperParams& gripper);

// Single-linkage agglomeration cut at `merge_threshold`: two points end up
// together iff a chain of pairwise distances below the threshold joins them.
// Clusters come back ordered by their smallest member id.
std::vector<Cluster> hierarchical_cluster(std::span<const ObjectSummary> objects,
                                          double merge_threshold);

enum class ThetaRange {
    full_half_turn,  // [-pi/2, pi/2), every line direction once
    quarter_turn,    // [-pi/4, pi/4] inclusive
};

struct SplitOptions {
    int theta_samples = 181;
    ThetaRange range = ThetaRange::full_half_turn;
};

// The sampled split-line angles, in sweep order.
std::vector<double> theta_grid(const SplitOptions& options);

struct SplitResult {
    Cluster first;
    Cluster second;
    double theta = 0.0;
    double weight = 0.0;  // |d*_first - d*_second|
    bool used_fallback = false;
};

// Splits `cluster` with a line through its centroid, choosing the sampled
// angle that best balances the two sides' grasp diameters. Requires >= 2 members.
SplitResult split_cluster(const Cluster& cluster, std::span<const ObjectSummary> objects,
                          const SplitOptions& options = {});

struct ClusterConfig {
    // <= 0 means "use the gripper's max opening".
    double merge_threshold = 0.0;
    SplitOptions split;
};

struct ClusterSet {
    std::vector<Cluster> clusters;
    // Index pairs (into `clusters`) whose member centroids admit no separating line.
    std::vector<std::pair<std::size_t, std::size_t>> inseparable_pairs;
};

// Hierarchical clustering followed by recursive splitting of every cluster
// the gripper cannot hold. Throws UngraspableObject if a single object is
// already wider than the gripper opening.
ClusterSet cluster_scene(const Scene& scene, const ClusterConfig& config = {});

}  // namespace pushmog
