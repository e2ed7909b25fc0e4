#include <benchmark/benchmark.h>

#include <random>

#include "hicl/taxonomy.hpp"

using namespace hicl;

namespace {

Taxonomy big_taxonomy(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pick(0, i - 1);
        edges.emplace_back(pick(rng), i);
    }
    return Taxonomy::from_edges(edges);
}

}  // namespace

static void BM_from_edges(benchmark::State& state) {
    Taxonomy t = big_taxonomy(static_cast<int>(state.range(0)), 5);
    auto edges = t.edges();
    for (auto _ : state) benchmark::DoNotOptimize(Taxonomy::from_edges(edges));
}
BENCHMARK(BM_from_edges)->Arg(1000)->Arg(10000);

static void BM_flatten(benchmark::State& state) {
    Taxonomy t = big_taxonomy(static_cast<int>(state.range(0)), 6);
    FlatteningPlan plan;
    std::mt19937_64 rng(7);
    std::bernoulli_distribution coin(0.3);
    for (NodeId n : t.internal_nodes())
        if (coin(rng)) plan.removed.insert(n);
    for (auto _ : state) benchmark::DoNotOptimize(t.flatten(plan));
}
BENCHMARK(BM_flatten)->Arg(1000)->Arg(10000);
