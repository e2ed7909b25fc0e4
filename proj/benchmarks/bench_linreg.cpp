#include <benchmark/benchmark.h>

#include <random>

#include "hicl/linreg.hpp"

using namespace hicl;

namespace {

struct Instance {
    std::vector<SparseVector> X;
    std::vector<int> y;
    int dim;
};

Instance make_instance(int n, int dim, double density, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::bernoulli_distribution keep(density), lab(0.5);
    Instance inst;
    inst.dim = dim;
    for (int i = 0; i < n; ++i) {
        SparseVector v;
        v.dim = dim;
        int y = lab(rng) ? 1 : -1;
        for (int j = 1; j <= dim; ++j)
            if (keep(rng)) v.entries.push_back({j, val(rng) + 0.3 * y});
        inst.X.push_back(std::move(v));
        inst.y.push_back(y);
    }
    inst.y[0] = 1;
    inst.y[n - 1] = -1;
    return inst;
}

}  // namespace

static void BM_objective(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)), 200, 0.1, 1);
    WeightVector w(inst.dim, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(objective(w, inst.X, inst.y, 1.0));
}
BENCHMARK(BM_objective)->Arg(500)->Arg(5000);

static void BM_gradient(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)), 200, 0.1, 2);
    WeightVector w(inst.dim, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(gradient(w, inst.X, inst.y, 1.0));
}
BENCHMARK(BM_gradient)->Arg(500)->Arg(5000);

static void BM_train(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)), 100, 0.15, 3);
    TrainConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(train(inst.X, inst.y, inst.dim, cfg));
}
BENCHMARK(BM_train)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
