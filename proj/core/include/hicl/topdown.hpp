#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hicl/data.hpp"
#include "hicl/linreg.hpp"
#include "hicl/taxonomy.hpp"

namespace hicl {

// Trained one-vs-rest model for a single non-root node.
struct NodeModel {
    NodeId node = -1;
    WeightVector weights;
    double C_used = 1.0;
    std::optional<double> fstar;  // validation objective, filled by the inf module
    bool degenerate = false;      // single-class training data; weights stay zero
};

// The complete top-down classifier: one model per non-root node.
struct HierModel {
    Taxonomy taxonomy;
    std::unordered_map<NodeId, NodeModel> models;
    int dim = 0;

    const NodeModel& model(NodeId n) const;
    NodeModel& model(NodeId n);
};

// Inclusive-policy binary labels for node n over the given leaf labels:
// +1 iff the label is n or a descendant of n, -1 otherwise. n must not be
// the root.
std::vector<int> binary_labels(const Taxonomy& tax, const std::vector<NodeId>& labels, NodeId n);

inline std::vector<int> binary_labels(const Taxonomy& tax, const Dataset& ds, NodeId n) {
    return binary_labels(tax, ds.y, n);
}

std::vector<double> default_c_grid();  // {1e-3, 1e-2, 1e-1, 1, 1e1, 1e2, 1e3}

struct HierTrainOptions {
    std::vector<double> c_grid = default_c_grid();
    double grad_tol = 1e-4;
    int max_iter = 1000;
    int jobs = 0;
    // After per-node C selection on the validation split, refit each node on
    // train + validation with the chosen C (the experimental protocol).
    // Off when models must stay independent of the validation data, e.g. for
    // validation-objective scoring.
    bool refit_on_union = true;
};

// One-vs-rest training for every non-root node. Per node: fit on `train` for
// each C in the grid, score binary F1 on `valid`, keep the smallest C
// achieving the maximum, then optionally refit on train + valid. Nodes are
// independent and may be fit in parallel; results do not depend on order.
// Throws data_error if a leaf has no training examples (named in the message).
HierModel train_hierarchy(const Taxonomy& tax, const Dataset& train, const Dataset& valid,
                          const HierTrainOptions& opts = {});

struct TopdownPrediction {
    NodeId leaf = -1;
    std::vector<NodeId> path;  // root ... leaf, inclusive
};

// Greedy root-to-leaf descent: at each internal node pick the child with the
// highest score; ties go to the lowest node-id.
TopdownPrediction predict_topdown(const HierModel& hm, const SparseVector& x);

// argmax_{leaf} <w_leaf, x>; ties go to the lowest leaf id.
NodeId predict_flat(const std::map<NodeId, WeightVector>& leaf_models, const SparseVector& x);

// Leaf-model view of a hierarchical model bank (for flat prediction).
std::map<NodeId, WeightVector> leaf_weights(const HierModel& hm);

// Binary F1 of sign(<w, x>) predictions against +-1 labels (0 when undefined).
double binary_f1(const WeightVector& w, const std::vector<SparseVector>& X,
                 const std::vector<int>& y);

}  // namespace hicl
