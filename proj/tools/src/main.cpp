#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "pushmog/pushmog.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitIncomplete = 3;

std::optional<pushmog::NoiseModel> parse_noise(const std::string& text) {
    if (text.empty() || text == "off") {
        return std::nullopt;
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw pushmog::ValidationError("--noise expects SIGMA_DEG,SIGMA_FRAC, e.g. 3,0.05");
    }
    pushmog::NoiseModel noise;
    noise.angle_sigma = std::stod(text.substr(0, comma)) * std::numbers::pi / 180.0;
    noise.length_sigma = std::stod(text.substr(comma + 1));
    if (noise.angle_sigma < 0.0 || noise.length_sigma < 0.0) {
        throw pushmog::ValidationError("noise sigmas must be non-negative");
    }
    return noise;
}

std::vector<pushmog::ObjectShape> catalog_from(const std::string& path) {
    return pushmog::load_catalog(pushmog::read_text_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Push-then-grasp bin clearing on a planar tabletop model"};
    app.require_subcommand(1);

    std::string catalog_path = PUSHMOG_DEFAULT_CATALOG;
    std::uint64_t seed = 1;
    std::string out_path;

    auto* gen = app.add_subcommand("gen-scene", "Place every catalog shape once in a seeded scene");
    gen->add_option("--catalog", catalog_path, "Catalog JSON")->check(CLI::ExistingFile);
    gen->add_option("--seed", seed, "Scene seed");
    gen->add_option("--out", out_path, "Output scene JSON (stdout if omitted)");

    std::string scene_path;
    std::string policy_text = "push-mog";
    std::string noise_text;
    std::string trace_path;
    auto* run = app.add_subcommand("run", "Clear one scene with one policy");
    run->add_option("--scene", scene_path, "Scene JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--policy", policy_text, "sog | mog | push-mog");
    run->add_option("--seed", seed, "Run seed (cluster choice, noise)");
    run->add_option("--noise", noise_text, "Push noise SIGMA_DEG,SIGMA_FRAC, or 'off'");
    run->add_option("--trace", trace_path, "Write the event trace JSON here");

    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    int scene_count = 0;
    std::string out_dir;
    auto* exp = app.add_subcommand("experiment", "Every policy on several seeded scenes");
    exp->add_option("--catalog", catalog_path, "Catalog JSON")->check(CLI::ExistingFile);
    exp->add_option("--seeds", seeds, "Scene seeds")->delimiter(',');
    exp->add_option("--scenes", scene_count, "Use seeds 1..N instead of --seeds");
    exp->add_option("--noise", noise_text, "Push noise SIGMA_DEG,SIGMA_FRAC, or 'off'");
    exp->add_option("--out-dir", out_dir, "Directory for runs.csv, summary.json, traces and SVGs");

    auto* render = app.add_subcommand("render", "Draw a scene with its clusters and planned pushes");
    render->add_option("--scene", scene_path, "Scene JSON")->required()->check(CLI::ExistingFile);
    render->add_option("--out", out_path, "Output SVG")->required();
    bool stages = false;
    render->add_flag("--stages", stages, "Write <out>_{initial,clusters,consolidated}.svg instead");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const auto catalog = catalog_from(catalog_path);
            const pushmog::Scene scene =
                pushmog::generate_scene(catalog, pushmog::default_workspace(), {}, seed);
            const std::string text = pushmog::save_scene(scene);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                pushmog::write_text_file(out_path, text);
            }
            return 0;
        }
        if (*run) {
            const pushmog::Scene scene = pushmog::load_scene(pushmog::read_text_file(scene_path));
            pushmog::RunConfig config;
            config.noise = parse_noise(noise_text);
            const pushmog::RunResult result =
                pushmog::run_policy(pushmog::parse_policy(policy_text), scene, config, seed);
            if (!trace_path.empty()) {
                pushmog::write_text_file(trace_path, pushmog::trace_to_json(result));
            }
            std::printf("policy=%s seed=%llu trips=%zu pushes=%d objects=%d opt=%.4f seconds=%.2f complete=%s\n",
                        std::string(pushmog::policy_name(result.policy)).c_str(),
                        static_cast<unsigned long long>(seed), result.trips.size(), result.total_pushes,
                        result.objects_transported, result.opt, result.modeled_seconds,
                        result.complete ? "yes" : "no");
            return result.complete ? 0 : kExitIncomplete;
        }
        if (*exp) {
            const auto catalog = catalog_from(catalog_path);
            pushmog::ExperimentConfig config;
            if (scene_count > 0) {
                seeds.clear();
                for (int i = 1; i <= scene_count; ++i) {
                    seeds.push_back(static_cast<std::uint64_t>(i));
                }
            }
            config.seeds = seeds;
            config.run.noise = parse_noise(noise_text);
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                config.out_dir = out_dir;
            }
            const pushmog::MetricsReport report = pushmog::run_experiment(catalog, config);
            std::cout << pushmog::report_table(report);
            for (const auto& s : report.summaries) {
                if (s.incomplete_runs > 0) {
                    return kExitIncomplete;
                }
            }
            return 0;
        }
        if (*render) {
            const pushmog::Scene scene = pushmog::load_scene(pushmog::read_text_file(scene_path));
            if (!stages) {
                pushmog::RenderOptions options;
                options.title = "seed " + std::to_string(scene.seed());
                pushmog::write_text_file(out_path, pushmog::render_svg(scene, options));
                return 0;
            }
            const std::filesystem::path base(out_path);
            const std::string stem = (base.parent_path() / base.stem()).string();
            for (const auto& [name, svg] : pushmog::render_stages(scene, {})) {
                pushmog::write_text_file(stem + "_" + name + ".svg", svg);
            }
            return 0;
        }
    } catch (const pushmog::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const pushmog::WorkspaceTooSmall& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
