// Prediction cost: top-down descent scores only the models along the chosen
// path's sibling sets, flat scoring touches every leaf model.

#include <benchmark/benchmark.h>

#include "hicl/pipeline.hpp"
#include "hicl/synth.hpp"

using namespace hicl;

namespace {

const SynthData& data() {
    static SynthData sd = [] {
        SynthConfig cfg;
        cfg.seed = 11;
        cfg.branches = 4;
        cfg.mids_per_branch = 4;
        cfg.leaves_per_mid = 4;  // 64 leaves
        cfg.train_per_class = 10;
        cfg.test_per_class = 2;
        return make_planted(cfg);
    }();
    return sd;
}

const HierModel& hier_model() {
    static HierModel hm = [] {
        SplitResult split = split_train_validation(data().train, 0.9, 1);
        HierTrainOptions opts;
        opts.c_grid = {1.0};
        return train_hierarchy(data().taxonomy, split.train, split.validation, opts);
    }();
    return hm;
}

const HierModel& flat_model() {
    static HierModel hm = [] {
        SplitResult split = split_train_validation(data().train, 0.9, 1);
        HierTrainOptions opts;
        opts.c_grid = {1.0};
        return train_hierarchy(flat_taxonomy(data().taxonomy), split.train, split.validation,
                               opts);
    }();
    return hm;
}

}  // namespace

static void BM_predict_topdown(benchmark::State& state) {
    const HierModel& hm = hier_model();
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_topdown(hm, data().test.x[i]));
        i = (i + 1) % data().test.size();
    }
}
BENCHMARK(BM_predict_topdown);

static void BM_predict_flat(benchmark::State& state) {
    static std::map<NodeId, WeightVector> lw = leaf_weights(flat_model());
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_flat(lw, data().test.x[i]));
        i = (i + 1) % data().test.size();
    }
}
BENCHMARK(BM_predict_flat);
