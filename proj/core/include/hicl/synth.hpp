#pragma once

#include <cstdint>

#include "hicl/data.hpp"
#include "hicl/taxonomy.hpp"

namespace hicl {

// Planted-inconsistency benchmark generator.
//
// Builds a 3-level taxonomy (root -> branches -> mid nodes -> leaves) with
// Gaussian-separated leaf classes whose means follow the tree geometry:
// branches far apart on one axis, mids of a branch split on a second, and
// the leaves of every mid on a shared circle in two more dimensions. One
// mid node is then corrupted by reassigning to it every other leaf of a mid
// under a different branch, so its children straddle two branch regions
// while the feature space stays true to the clean structure. The moved
// classes interleave with their former siblings, leaving the corrupted
// node's one-vs-rest problem linearly infeasible: its validation objective
// rises far above the consistent nodes' and top-down routing through the
// damaged region sheds examples that a flattened hierarchy recovers.
struct SynthConfig {
    uint64_t seed = 1;
    int branches = 2;
    int mids_per_branch = 2;
    int leaves_per_mid = 4;  // 16 leaf classes with the defaults
    int train_per_class = 25;
    int test_per_class = 15;
    double noise = 1.0;
    int moved_leaves = 2;  // interleaved circle positions pulled into the corrupted node
};

struct SynthData {
    Taxonomy taxonomy;
    Dataset train;
    Dataset test;
    NodeId corrupted = -1;  // the planted inconsistent node
};

SynthData make_planted(const SynthConfig& cfg);

}  // namespace hicl
