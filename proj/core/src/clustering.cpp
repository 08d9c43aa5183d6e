#include "pushmog/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "pushmog/error.hpp"

namespace pushmog {

namespace {

const ObjectSummary& lookup(std::span<const ObjectSummary> objects, ObjectId id) {
    for (const auto& o : objects) {
        if (o.id == id) {
            return o;
        }
    }
    throw UnknownObject(id, "object " + std::to_string(id) + " missing from cluster inputs");
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

bool better_split(double w, double theta, double best_w, double best_theta) {
    if (w != best_w) {
        return w < best_w;
    }
    if (std::abs(theta) != std::abs(best_theta)) {
        return std::abs(theta) < std::abs(best_theta);
    }
    return theta < best_theta;
}

}  // namespace

std::vector<ObjectSummary> summarize(const Scene& scene) {
    std::vector<ObjectSummary> out;
    out.reserve(scene.size());
    for (const auto& o : scene.objects()) {
        out.push_back({o.id(), o.centroid(), o.min_grasp_diameter()});
    }
    return out;
}

bool Cluster::contains(ObjectId id) const {
    return std::binary_search(member_ids.begin(), member_ids.end(), id);
}

Cluster make_cluster(std::vector<ObjectId> ids, std::span<const ObjectSummary> objects) {
    std::sort(ids.begin(), ids.end());
    Cluster c;
    c.member_ids = std::move(ids);
    Vec2 sum{};
    for (const ObjectId id : c.member_ids) {
        const auto& o = lookup(objects, id);
        c.grasp_diameter += o.diameter;
        sum += o.centroid;
    }
    if (!c.member_ids.empty()) {
        c.centroid = sum / static_cast<double>(c.member_ids.size());
    }
    return c;
}

bool is_valid(const Cluster& cluster, const GripperParams& gripper) {
    return cluster.grasp_diameter <= gripper.max_opening;
}

std::vector<Cluster> hierarchical_cluster(std::span<const ObjectSummary> objects,
                                          double merge_threshold) {
    const std::size_t n = objects.size();
    struct Link {
        double length;
        std::size_t a;
        std::size_t b;
    };
    std::vector<Link> links;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(objects[i].centroid, objects[j].centroid);
            if (d < merge_threshold) {
                links.push_back({d, i, j});
            }
        }
    }
    // Kruskal order: merging along the shortest remaining link is exactly
    // the single-linkage agglomeration sequence.
    std::sort(links.begin(), links.end(), [](const Link& x, const Link& y) {
        return std::tie(x.length, x.a, x.b) < std::tie(y.length, y.a, y.b);
    });
    DisjointSets sets(n);
    for (const auto& l : links) {
        sets.unite(l.a, l.b);
    }

    std::vector<std::vector<ObjectId>> groups(n);
    for (std::size_t i = 0; i < n; ++i) {
        groups[sets.find(i)].push_back(objects[i].id);
    }
    std::vector<Cluster> out;
    for (auto& g : groups) {
        if (!g.empty()) {
            out.push_back(make_cluster(std::move(g), objects));
        }
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        return a.member_ids.front() < b.member_ids.front();
    });
    return out;
}

std::vector<double> theta_grid(const SplitOptions& options) {
    const int n = std::max(options.theta_samples, 1);
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        if (options.range == ThetaRange::full_half_turn) {
            grid.push_back(-std::numbers::pi / 2.0 + std::numbers::pi * k / n);
        } else if (n == 1) {
            grid.push_back(0.0);
        } else {
            grid.push_back(-std::numbers::pi / 4.0 + (std::numbers::pi / 2.0) * k / (n - 1));
        }
    }
    return grid;
}

SplitResult split_cluster(const Cluster& cluster, std::span<const ObjectSummary> objects,
                          const SplitOptions& options) {
    if (cluster.size() < 2) {
        throw InvalidState("split_cluster needs at least two members");
    }
    std::vector<ObjectSummary> members;
    for (const ObjectId id : cluster.member_ids) {
        members.push_back(lookup(objects, id));
    }

    bool found = false;
    SplitResult best;
    for (const double theta : theta_grid(options)) {
        const Vec2 v = unit_from_angle(theta);
        std::vector<ObjectId> left;
        std::vector<ObjectId> right;
        double d_left = 0.0;
        double d_right = 0.0;
        std::vector<const ObjectSummary*> on_line;
        for (const auto& m : members) {
            const double side = cross(v, m.centroid - cluster.centroid);
            if (side > kGeomEps) {
                left.push_back(m.id);
                d_left += m.diameter;
            } else if (side < -kGeomEps) {
                right.push_back(m.id);
                d_right += m.diameter;
            } else {
                on_line.push_back(&m);
            }
        }
        // Centroids on the split line go wherever they shrink the imbalance.
        for (const auto* m : on_line) {
            if (std::abs(d_left + m->diameter - d_right) <= std::abs(d_left - d_right - m->diameter)) {
                left.push_back(m->id);
                d_left += m->diameter;
            } else {
                right.push_back(m->id);
                d_right += m->diameter;
            }
        }
        if (left.empty() || right.empty()) {
            continue;
        }
        Cluster first = make_cluster(std::move(left), objects);
        Cluster second = make_cluster(std::move(right), objects);
        const double w = std::abs(first.grasp_diameter - second.grasp_diameter);
        if (!found || better_split(w, theta, best.weight, best.theta)) {
            found = true;
            best = {std::move(first), std::move(second), theta, w, false};
        }
    }
    if (found) {
        return best;
    }

    // Every sampled line left one side empty: split by rank along x.
    std::vector<ObjectSummary> ranked = members;
    std::stable_sort(ranked.begin(), ranked.end(), [](const ObjectSummary& a, const ObjectSummary& b) {
        return std::tie(a.centroid.x, a.id) < std::tie(b.centroid.x, b.id);
    });
    const std::size_t half = ranked.size() / 2;
    std::vector<ObjectId> lower;
    std::vector<ObjectId> upper;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        (i < half ? lower : upper).push_back(ranked[i].id);
    }
    SplitResult out;
    out.first = make_cluster(std::move(lower), objects);
    out.second = make_cluster(std::move(upper), objects);
    out.theta = 0.0;
    out.weight = std::abs(out.first.grasp_diameter - out.second.grasp_diameter);
    out.used_fallback = true;
    return out;
}

ClusterSet cluster_scene(const Scene& scene, const ClusterConfig& config) {
    const auto objects = summarize(scene);
    const double max_opening = scene.gripper().max_opening;
    for (const auto& o : objects) {
        if (o.diameter > max_opening) {
            throw UngraspableObject(o.id, "object " + std::to_string(o.id) +
                                              " is wider than the gripper opening");
        }
    }
    const double threshold = config.merge_threshold > 0.0 ? config.merge_threshold : max_opening;

    ClusterSet result;
    std::vector<Cluster> pending = hierarchical_cluster(objects, threshold);
    while (!pending.empty()) {
        Cluster c = std::move(pending.back());
        pending.pop_back();
        if (is_valid(c, scene.gripper())) {
            result.clusters.push_back(std::move(c));
            continue;
        }
        auto split = split_cluster(c, objects, config.split);
        pending.push_back(std::move(split.second));
        pending.push_back(std::move(split.first));
    }
    std::sort(result.clusters.begin(), result.clusters.end(), [](const Cluster& a, const Cluster& b) {
        return a.member_ids.front() < b.member_ids.front();
    });

    std::vector<std::vector<Point2>> centroids;
    for (const auto& c : result.clusters) {
        auto& pts = centroids.emplace_back();
        for (const ObjectId id : c.member_ids) {
            pts.push_back(scene.at(id).centroid());
        }
    }
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        for (std::size_t j = i + 1; j < centroids.size(); ++j) {
            if (!separable(centroids[i], centroids[j])) {
                result.inseparable_pairs.emplace_back(i, j);
            }
        }
    }
    return result;
}

}  // namespace pushmog
