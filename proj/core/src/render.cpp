#include "pushmog/render.hpp"

#include <array>
#include <sstream>

namespace pushmog {

namespace {

constexpr std::array<const char*, 10> kPalette = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                                  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

class SvgWriter {
public:
    SvgWriter(const Rect& workspace, double scale) : ws_(workspace), scale_(scale) {}

    double px(double x) const { return (x - ws_.min_x) * scale_; }
    double py(double y) const { return (ws_.max_y - y) * scale_; }

    void polygon(const ConvexPolygon& poly, const std::string& fill, const std::string& stroke,
                 double opacity, bool dashed = false) {
        body_ << "<polygon points=\"";
        for (const auto& v : poly.vertices()) {
            body_ << px(v.x) << ',' << py(v.y) << ' ';
        }
        body_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\" stroke=\"" << stroke
              << "\" stroke-width=\"1\"" << (dashed ? " stroke-dasharray=\"4,3\"" : "") << "/>\n";
    }

    void line(Point2 a, Point2 b, const std::string& stroke, double width) {
        body_ << "<line x1=\"" << px(a.x) << "\" y1=\"" << py(a.y) << "\" x2=\"" << px(b.x) << "\" y2=\""
              << py(b.y) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
              << "\" marker-end=\"url(#arrow)\"/>\n";
    }

    void circle(Point2 c, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << px(c.x) << "\" cy=\"" << py(c.y) << "\" r=\"" << r * scale_
              << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(Point2 at, const std::string& s, double size) {
        body_ << "<text x=\"" << px(at.x) << "\" y=\"" << py(at.y) << "\" font-size=\"" << size
              << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-family=\"monospace\">" << s
              << "</text>\n";
    }

    std::string finish(const std::string& title) const {
        std::ostringstream out;
        const double w = ws_.width() * scale_;
        const double h = ws_.height() * scale_;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h + 24
            << "\" viewBox=\"0 -24 " << w << ' ' << h + 24 << "\">\n";
        out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
               "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n";
        out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
            << "\" fill=\"#fbfbf8\" stroke=\"#333\" stroke-width=\"2\"/>\n";
        if (!title.empty()) {
            out << "<text x=\"4\" y=\"-8\" font-size=\"14\" font-family=\"monospace\">" << title << "</text>\n";
        }
        out << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    Rect ws_;
    double scale_;
    std::ostringstream body_;
};

}  // namespace

std::string render_svg(const Scene& scene, const RenderOptions& options) {
    SvgWriter svg(scene.workspace(), options.pixels_per_meter);
    for (const auto& o : scene.objects()) {
        std::string fill = "#d0d0d0";
        for (std::size_t c = 0; c < options.clusters.size(); ++c) {
            if (options.clusters[c].contains(o.id())) {
                fill = kPalette[c % kPalette.size()];
            }
        }
        svg.polygon(o.world_polygon(), fill, "#222", 0.75);
        svg.text(o.centroid(), std::to_string(o.id()), 10);
    }
    for (const auto& p : options.pushes) {
        const ObjectInstance* o = scene.find(p.object_id);
        if (o != nullptr) {
            svg.polygon(o->shape().polygon().transformed(predict_post_push(p)), "none", "#555", 1.0, true);
        }
        svg.line(p.start_centroid, p.target_centroid, "#c0392b", 1.5);
        const ForkPose fork = fork_pose(p, scene.gripper());
        svg.circle(fork.left_fingertip, scene.gripper().finger_radius, "#2c3e50");
        svg.circle(fork.right_fingertip, scene.gripper().finger_radius, "#2c3e50");
    }
    for (const auto& g : options.grasps) {
        for (const auto& jaw : jaw_footprints(g, scene.gripper())) {
            svg.polygon(jaw, "#2c3e50", "#2c3e50", 0.9);
        }
    }
    return svg.finish(options.title);
}

std::vector<std::pair<std::string, std::string>> render_stages(const Scene& scene, const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    RenderOptions initial;
    initial.title = "initial scene";
    out.emplace_back("initial", render_svg(scene, initial));
    if (scene.empty()) {
        return out;
    }

    const ClusterSet clusters = cluster_scene(scene, config.cluster);
    RenderOptions planned;
    planned.title = "clusters and planned fork pushes";
    planned.clusters = clusters.clusters;
    Scene consolidated = scene;
    for (const auto& c : clusters.clusters) {
        for (const auto& plan : plan_cluster_pushes(c, consolidated, config.contact_clearance)) {
            planned.pushes.push_back(plan);
            consolidated = simulate_push(consolidated, plan).first;
        }
    }
    out.emplace_back("clusters", render_svg(scene, planned));

    RenderOptions after;
    after.title = "consolidated (noise free) with planned grasps";
    after.clusters = clusters.clusters;
    for (const auto& c : clusters.clusters) {
        if (auto g = plan_multi_grasp(c, consolidated, {}, consolidated.gripper(), config.grasp)) {
            after.grasps.push_back(*g);
        }
    }
    out.emplace_back("consolidated", render_svg(consolidated, after));
    return out;
}

}  // namespace pushmog
