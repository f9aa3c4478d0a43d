#include "bikeflow/baselines.hpp"
#include "bikeflow/flow_solver.hpp"
#include "bikeflow/infomap.hpp"
#include "bikeflow/map_equation.hpp"
#include "bikeflow/random.hpp"

#include <benchmark/benchmark.h>

using namespace bikeflow;

namespace {

// Groups of 20 stations; a pair trades a trip with probability 0.5 inside a
// group and 0.02 across groups.
struct Planted {
    FlowNetwork net;
    Partition truth;
};

Planted planted(std::size_t groups, std::uint64_t seed = 1) {
    constexpr std::size_t size = 20;
    const std::size_t n = groups * size;
    std::vector<Station> stations;
    std::vector<ModuleId> truth;
    for (std::size_t i = 0; i < n; ++i) {
        stations.push_back({static_cast<StationId>(i + 1), "s" + std::to_string(i + 1), std::nullopt});
        truth.push_back(static_cast<ModuleId>(i / size));
    }
    Rng rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            const double p = truth[u] == truth[v] ? 0.5 : 0.02;
            if (u != v && rng.uniform() < p) {
                edges.push_back({static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), 1 + rng.below(4)});
            }
        }
    }
    return {FlowNetwork(std::move(stations), std::move(edges)), Partition(std::move(truth))};
}

void BM_Codelength(benchmark::State &state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)));
    const FlowState f = empirical_flow(g.net);
    for (auto _ : state) {
        benchmark::DoNotOptimize(codelength(f, g.truth));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.net.edge_count()));
}
BENCHMARK(BM_Codelength)->Arg(5)->Arg(20)->Arg(50);

void BM_MoveDelta(benchmark::State &state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)));
    const FlowState f = empirical_flow(g.net);
    const MapEquationState s(f, g.truth);
    NodeIndex node = 0;
    for (auto _ : state) {
        const ModuleId target = (s.module_of(node) + 1) % static_cast<ModuleId>(g.truth.module_count());
        benchmark::DoNotOptimize(s.delta(node, target));
        node = (node + 1) % static_cast<NodeIndex>(s.node_count());
    }
}
BENCHMARK(BM_MoveDelta)->Arg(5)->Arg(50);

void BM_RandomWalk(benchmark::State &state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_walk_flow(g.net));
    }
}
BENCHMARK(BM_RandomWalk)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Infomap(benchmark::State &state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)));
    const FlowState f = empirical_flow(g.net);
    OptimizerConfig cfg;
    cfg.coarsen = state.range(1) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(infomap(f, g.net, cfg));
    }
}
BENCHMARK(BM_Infomap)->Args({6, 1})->Args({6, 0})->Args({20, 1})->Unit(benchmark::kMillisecond);

void BM_Louvain(benchmark::State &state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(louvain(g.net, 1));
    }
}
BENCHMARK(BM_Louvain)->Arg(6)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State &state) {
    const auto g = planted(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_modularity(g.net));
    }
}
BENCHMARK(BM_Greedy)->Arg(6)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
