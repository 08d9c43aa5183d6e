#include "pushmog/scene.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pushmog/error.hpp"

namespace pushmog {

using nlohmann::json;

ObjectShape::ObjectShape(std::string name, ConvexPolygon polygon)
    : name_(std::move(name)), polygon_(std::move(polygon)) {
    const int sides = side_count();
    if (sides < kMinSides || sides > kMaxSides) {
        throw InvalidShape("shape '" + name_ + "' has " + std::to_string(sides) +
                           " sides; catalog shapes have 3 to 8");
    }
    if (norm(centroid(polygon_)) > kGeomEps) {
        throw InvalidShape("shape '" + name_ + "' is not centered on its centroid");
    }
}

ObjectShape ObjectShape::centered(std::string name, std::vector<Vec2> vertices) {
    const ConvexPolygon raw(std::move(vertices));
    const Point2 c = centroid(raw);
    // Already centered input is kept bit-for-bit so catalogs round-trip.
    if (std::abs(c.x) <= kGeomEps && std::abs(c.y) <= kGeomEps) {
        return ObjectShape(std::move(name), raw);
    }
    return ObjectShape(std::move(name), raw.translated(-c));
}

double min_grasp_diameter(const ObjectShape& shape) { return min_width(shape.polygon()).width; }

ObjectInstance::ObjectInstance(ObjectId id, ObjectShape shape, Pose2 pose)
    : id_(id),
      shape_(std::move(shape)),
      pose_(pose),
      world_(shape_.polygon().transformed(pose_)),
      centroid_(pushmog::centroid(world_)),
      min_grasp_diameter_(pushmog::min_grasp_diameter(shape_)) {}

ObjectInstance ObjectInstance::with_pose(const Pose2& pose) const {
    return ObjectInstance(id_, shape_, pose);
}

void GripperParams::validate() const {
    if (!(max_opening > 0.0)) {
        throw GripperConfigError("gripper max_opening must be positive");
    }
    if (!(fork_opening_fraction > 0.0 && fork_opening_fraction <= 1.0)) {
        throw GripperConfigError("fork_opening_fraction must be in (0, 1]");
    }
    if (!(finger_radius >= 0.0) || !(jaw_depth > 0.0)) {
        throw GripperConfigError("finger_radius must be >= 0 and jaw_depth > 0");
    }
}

Scene::Scene(Rect workspace, std::vector<ObjectInstance> objects, GripperParams gripper,
             std::uint64_t seed)
    : workspace_(workspace), objects_(std::move(objects)), gripper_(gripper), seed_(seed) {
    std::sort(objects_.begin(), objects_.end(),
              [](const ObjectInstance& a, const ObjectInstance& b) { return a.id() < b.id(); });
    validate();
}

const ObjectInstance* Scene::find(ObjectId id) const {
    auto it = std::lower_bound(objects_.begin(), objects_.end(), id,
                               [](const ObjectInstance& o, ObjectId v) { return o.id() < v; });
    if (it == objects_.end() || it->id() != id) {
        return nullptr;
    }
    return &*it;
}

const ObjectInstance& Scene::at(ObjectId id) const {
    if (const auto* o = find(id)) {
        return *o;
    }
    throw UnknownObject(id, "no object with id " + std::to_string(id) + " in scene");
}

Scene Scene::with_pose(ObjectId id, const Pose2& pose) const {
    Scene out = *this;
    for (auto& o : out.objects_) {
        if (o.id() == id) {
            o = o.with_pose(pose);
            return out;
        }
    }
    throw UnknownObject(id, "no object with id " + std::to_string(id) + " in scene");
}

Scene Scene::without(std::span<const ObjectId> ids) const {
    Scene out = *this;
    std::erase_if(out.objects_, [&](const ObjectInstance& o) {
        return std::find(ids.begin(), ids.end(), o.id()) != ids.end();
    });
    return out;
}

void Scene::validate() const {
    if (!(workspace_.width() > 0.0) || !(workspace_.height() > 0.0)) {
        throw ValidationError("workspace must have positive extent");
    }
    try {
        gripper_.validate();
    } catch (const GripperConfigError& e) {
        throw ValidationError(e.what());
    }
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        const auto& a = objects_[i];
        if (i > 0 && objects_[i - 1].id() == a.id()) {
            throw ValidationError("duplicate object id " + std::to_string(a.id()));
        }
        if (!workspace_.contains(a.world_polygon())) {
            throw ValidationError("object " + std::to_string(a.id()) + " lies outside the workspace");
        }
        for (std::size_t j = i + 1; j < objects_.size(); ++j) {
            if (polygons_intersect(a.world_polygon(), objects_[j].world_polygon(), 0.0)) {
                throw ValidationError("objects " + std::to_string(a.id()) + " and " +
                                      std::to_string(objects_[j].id()) + " overlap");
            }
        }
    }
}

Scene generate_scene(std::span<const ObjectShape> catalog, const Rect& workspace,
                     const GripperParams& gripper, std::uint64_t seed) {
    gripper.validate();
    std::vector<ObjectInstance> placed;
    if (catalog.empty()) {
        return Scene(workspace, std::move(placed), gripper, seed);
    }
    double r_max = 0.0;
    for (const auto& s : catalog) {
        r_max = std::max(r_max, s.circumradius());
    }
    if (workspace.width() < 2.0 * r_max || workspace.height() < 2.0 * r_max) {
        throw WorkspaceTooSmall("workspace cannot hold a single placement circle");
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(catalog.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::shuffle(order.begin(), order.end(), rng);

    std::uniform_real_distribution<double> ux(workspace.min_x + r_max, workspace.max_x - r_max);
    std::uniform_real_distribution<double> uy(workspace.min_y + r_max, workspace.max_y - r_max);
    std::uniform_real_distribution<double> utheta(-std::numbers::pi, std::numbers::pi);

    std::vector<Point2> centers;
    for (const std::size_t idx : order) {
        bool ok = false;
        Point2 c;
        for (int attempt = 0; attempt < kPlacementRetryBudget && !ok; ++attempt) {
            c = {ux(rng), uy(rng)};
            ok = std::all_of(centers.begin(), centers.end(),
                             [&](Point2 q) { return distance(c, q) >= 2.0 * r_max; });
        }
        if (!ok) {
            throw WorkspaceTooSmall("could not place shape '" + catalog[idx].name() + "' after " +
                                    std::to_string(kPlacementRetryBudget) + " attempts");
        }
        centers.push_back(c);
        placed.emplace_back(static_cast<ObjectId>(idx), catalog[idx], Pose2(c, utheta(rng)));
    }
    return Scene(workspace, std::move(placed), gripper, seed);
}

namespace {

json polygon_to_json(const ConvexPolygon& poly) {
    json verts = json::array();
    for (const auto& v : poly.vertices()) {
        verts.push_back({v.x, v.y});
    }
    return verts;
}

template <typename T>
T require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad field '") + key + "': " + e.what());
    }
}

std::vector<Vec2> vertices_from_json(const json& j) {
    if (!j.is_array()) {
        throw ValidationError("vertices must be an array of [x, y] pairs");
    }
    std::vector<Vec2> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ValidationError("vertices must be an array of [x, y] pairs");
        }
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string save_scene(const Scene& scene) {
    json j;
    j["schema"] = kSceneSchema;
    j["workspace"] = {scene.workspace().width(), scene.workspace().height()};
    const auto& g = scene.gripper();
    j["gripper"] = {{"max_opening", g.max_opening},
                    {"fork_opening_fraction", g.fork_opening_fraction},
                    {"finger_radius", g.finger_radius},
                    {"jaw_depth", g.jaw_depth}};
    j["seed"] = scene.seed();
    json objects = json::array();
    for (const auto& o : scene.objects()) {
        objects.push_back({{"id", o.id()},
                           {"name", o.shape().name()},
                           {"vertices", polygon_to_json(o.shape().polygon())},
                           {"pose",
                            {{"x", o.pose().translation.x},
                             {"y", o.pose().translation.y},
                             {"theta", o.pose().rotation}}}});
    }
    j["objects"] = std::move(objects);
    return j.dump(2) + "\n";
}

Scene load_scene(std::string_view text) {
    const json j = parse(text);
    if (require<std::string>(j, "schema") != kSceneSchema) {
        throw ValidationError("unsupported scene schema, expected " + std::string(kSceneSchema));
    }
    const auto ws = require<std::vector<double>>(j, "workspace");
    if (ws.size() != 2) {
        throw ValidationError("workspace must be [width, height]");
    }
    const json& gj = j.contains("gripper") ? j.at("gripper") : json::object();
    GripperParams g;
    g.max_opening = require<double>(gj, "max_opening");
    g.fork_opening_fraction = require<double>(gj, "fork_opening_fraction");
    g.finger_radius = require<double>(gj, "finger_radius");
    g.jaw_depth = require<double>(gj, "jaw_depth");
    const auto seed = require<std::uint64_t>(j, "seed");
    if (!j.contains("objects") || !j.at("objects").is_array()) {
        throw ValidationError("missing field 'objects'");
    }
    std::vector<ObjectInstance> objects;
    try {
        for (const auto& oj : j.at("objects")) {
            const auto& pj = oj.contains("pose") ? oj.at("pose") : json::object();
            Pose2 pose({require<double>(pj, "x"), require<double>(pj, "y")},
                       require<double>(pj, "theta"));
            ObjectShape shape(require<std::string>(oj, "name"),
                              ConvexPolygon(vertices_from_json(oj.at("vertices"))));
            objects.emplace_back(require<int>(oj, "id"), std::move(shape), pose);
        }
    } catch (const InvalidShape& e) {
        throw ValidationError(e.what());
    } catch (const json::exception& e) {
        throw ValidationError(e.what());
    }
    return Scene(Rect{0.0, 0.0, ws[0], ws[1]}, std::move(objects), g, seed);
}

std::vector<ObjectShape> load_catalog(std::string_view text) {
    const json j = parse(text);
    if (require<std::string>(j, "schema") != kCatalogSchema) {
        throw ValidationError("unsupported catalog schema, expected " +
                              std::string(kCatalogSchema));
    }
    if (!j.contains("shapes") || !j.at("shapes").is_array()) {
        throw ValidationError("missing field 'shapes'");
    }
    std::vector<ObjectShape> out;
    std::set<std::string> names;
    for (const auto& sj : j.at("shapes")) {
        auto name = require<std::string>(sj, "name");
        if (!names.insert(name).second) {
            throw ValidationError("duplicate shape name '" + name + "'");
        }
        try {
            out.push_back(ObjectShape::centered(std::move(name), vertices_from_json(sj.at("vertices"))));
        } catch (const InvalidShape& e) {
            throw ValidationError(e.what());
        }
    }
    return out;
}

std::string save_catalog(std::span<const ObjectShape> catalog) {
    json shapes = json::array();
    for (const auto& s : catalog) {
        shapes.push_back({{"name", s.name()}, {"vertices", polygon_to_json(s.polygon())}});
    }
    json j{{"schema", kCatalogSchema}, {"shapes", std::move(shapes)}};
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << text;
}

}  // namespace pushmog
