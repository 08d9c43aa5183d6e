#include <benchmark/benchmark.h>

#include "pushmog/pushmog.hpp"

using namespace pushmog;

namespace {

const std::vector<ObjectShape>& catalog() {
    static const auto c = load_catalog(read_text_file(PUSHMOG_DEFAULT_CATALOG));
    return c;
}

void BM_DirectionalGap(benchmark::State& state) {
    const ConvexPolygon a = catalog()[20].polygon();
    const ConvexPolygon b = catalog()[31].polygon().transformed(Pose2({0.1, 0.02}, 0.3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(directional_gap(a, b, {1.0, 0.0}));
    }
}
BENCHMARK(BM_DirectionalGap);

void BM_MinWidth(benchmark::State& state) {
    const ConvexPolygon p = catalog()[33].polygon();
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_width(p));
    }
}
BENCHMARK(BM_MinWidth);

void BM_GenerateScene(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_scene(catalog(), default_workspace(), {}, seed++));
    }
}
BENCHMARK(BM_GenerateScene);

void BM_ClusterScene(benchmark::State& state) {
    const Scene s = generate_scene(catalog(), default_workspace(), {}, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cluster_scene(s));
    }
}
BENCHMARK(BM_ClusterScene);

void BM_Policy(benchmark::State& state) {
    const auto kind = static_cast<PolicyKind>(state.range(0));
    const Scene s = generate_scene(catalog(), default_workspace(), {}, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_policy(kind, s, {}, 1));
    }
    state.SetLabel(std::string(policy_name(kind)));
}
BENCHMARK(BM_Policy)
    ->Arg(static_cast<int>(PolicyKind::frictional_sog))
    ->Arg(static_cast<int>(PolicyKind::mog_only))
    ->Arg(static_cast<int>(PolicyKind::push_mog))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
