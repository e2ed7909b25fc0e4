#include "hicl/topdown.hpp"

#include <algorithm>
#include <unordered_map>

#include "hicl/parallel.hpp"

namespace hicl {

const NodeModel& HierModel::model(NodeId n) const {
    auto it = models.find(n);
    if (it == models.end())
        throw data_error("no model for node " + std::to_string(n));
    return it->second;
}

NodeModel& HierModel::model(NodeId n) {
    auto it = models.find(n);
    if (it == models.end())
        throw data_error("no model for node " + std::to_string(n));
    return it->second;
}

std::vector<int> binary_labels(const Taxonomy& tax, const std::vector<NodeId>& labels, NodeId n) {
    if (n == tax.root()) throw data_error("binary labels are undefined for the root node");
    if (!tax.contains(n)) throw data_error("unknown node " + std::to_string(n));

    std::unordered_map<NodeId, int> cache;  // leaf label -> +-1
    std::vector<int> out;
    out.reserve(labels.size());
    for (NodeId y : labels) {
        auto it = cache.find(y);
        if (it == cache.end()) {
            if (!tax.contains(y))
                throw data_error("label " + std::to_string(y) + " is not in the taxonomy");
            int lab = tax.is_ancestor_or_self(n, y) ? 1 : -1;
            it = cache.emplace(y, lab).first;
        }
        out.push_back(it->second);
    }
    return out;
}

std::vector<double> default_c_grid() { return {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}; }

double binary_f1(const WeightVector& w, const std::vector<SparseVector>& X,
                 const std::vector<int>& y) {
    long tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        bool pred_pos = score(w, X[i]) >= 0.0;
        if (pred_pos && y[i] > 0) ++tp;
        else if (pred_pos) ++fp;
        else if (y[i] > 0) ++fn;
    }
    double denom = static_cast<double>(2 * tp + fp + fn);
    return denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
}

HierModel train_hierarchy(const Taxonomy& tax, const Dataset& train, const Dataset& valid,
                          const HierTrainOptions& opts) {
    if (opts.c_grid.empty()) throw data_error("C grid is empty");
    for (double c : opts.c_grid)
        if (!(c > 0.0)) throw data_error("C grid values must be positive");
    validate_labels(train, tax);
    if (valid.size() > 0) validate_labels(valid, tax);

    std::unordered_map<NodeId, size_t> train_count;
    for (NodeId y : train.y) train_count[y] += 1;
    for (NodeId leaf : tax.leaves())
        if (train_count[leaf] == 0)
            throw data_error("leaf " + std::to_string(leaf) + " has no training examples");

    std::vector<double> grid = opts.c_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    HierModel hm;
    hm.taxonomy = tax;
    hm.dim = std::max(train.dim, valid.dim);

    // Union set for the final refit; order is train then valid.
    std::vector<SparseVector> union_x;
    std::vector<NodeId> union_y;
    if (opts.refit_on_union && valid.size() > 0) {
        union_x.reserve(train.size() + valid.size());
        union_x.insert(union_x.end(), train.x.begin(), train.x.end());
        union_x.insert(union_x.end(), valid.x.begin(), valid.x.end());
        union_y.reserve(train.size() + valid.size());
        union_y.insert(union_y.end(), train.y.begin(), train.y.end());
        union_y.insert(union_y.end(), valid.y.begin(), valid.y.end());
    }

    const std::vector<NodeId> nodes = tax.nonroot_nodes();
    std::vector<NodeModel> fitted(nodes.size());

    parallel_for(nodes.size(), opts.jobs, [&](size_t idx) {
        const NodeId n = nodes[idx];
        const std::vector<int> ytr = binary_labels(tax, train.y, n);
        std::vector<int> yva;
        if (valid.size() > 0) yva = binary_labels(tax, valid.y, n);

        TrainConfig cfg;
        cfg.grad_tol = opts.grad_tol;
        cfg.max_iter = opts.max_iter;

        double best_c = grid.front();
        double best_f1 = -1.0;
        TrainResult best_fit;
        if (grid.size() == 1 || yva.empty()) {
            // No selection signal; smallest C (strongest regularization) wins.
            cfg.C = best_c;
            best_fit = hicl::train(train.x, ytr, hm.dim, cfg);
        } else {
            WeightVector warm;
            for (double c : grid) {
                cfg.C = c;
                TrainResult fit = hicl::train(train.x, ytr, hm.dim, cfg, warm.empty() ? nullptr : &warm);
                warm = fit.w;
                double f1 = binary_f1(fit.w, valid.x, yva);
                if (f1 > best_f1) {  // first strict max keeps the smallest C on ties
                    best_f1 = f1;
                    best_c = c;
                    best_fit = std::move(fit);
                }
            }
        }

        NodeModel nm;
        nm.node = n;
        nm.C_used = best_c;
        if (!union_x.empty()) {
            cfg.C = best_c;
            std::vector<int> yun = binary_labels(tax, union_y, n);
            TrainResult refit = hicl::train(union_x, yun, hm.dim, cfg, &best_fit.w);
            nm.weights = std::move(refit.w);
            nm.degenerate = refit.degenerate;
        } else {
            nm.weights = std::move(best_fit.w);
            nm.degenerate = best_fit.degenerate;
        }
        fitted[idx] = std::move(nm);
    });

    for (auto& nm : fitted) hm.models.emplace(nm.node, std::move(nm));
    return hm;
}

TopdownPrediction predict_topdown(const HierModel& hm, const SparseVector& x) {
    const Taxonomy& tax = hm.taxonomy;
    TopdownPrediction pred;
    NodeId p = tax.root();
    pred.path.push_back(p);
    while (!tax.is_leaf(p)) {
        const auto& kids = tax.children(p);  // ascending ids
        NodeId best = kids.front();
        double best_score = score(hm.model(best).weights, x);
        for (size_t i = 1; i < kids.size(); ++i) {
            double s = score(hm.model(kids[i]).weights, x);
            if (s > best_score) {  // strict: ties keep the lowest node-id
                best_score = s;
                best = kids[i];
            }
        }
        p = best;
        pred.path.push_back(p);
    }
    pred.leaf = p;
    return pred;
}

NodeId predict_flat(const std::map<NodeId, WeightVector>& leaf_models, const SparseVector& x) {
    if (leaf_models.empty()) throw data_error("no leaf models to predict with");
    NodeId best = leaf_models.begin()->first;
    double best_score = score(leaf_models.begin()->second, x);
    for (auto it = std::next(leaf_models.begin()); it != leaf_models.end(); ++it) {
        double s = score(it->second, x);
        if (s > best_score) {
            best_score = s;
            best = it->first;
        }
    }
    return best;
}

std::map<NodeId, WeightVector> leaf_weights(const HierModel& hm) {
    std::map<NodeId, WeightVector> out;
    for (NodeId leaf : hm.taxonomy.leaves()) out.emplace(leaf, hm.model(leaf).weights);
    return out;
}

}  // namespace hicl
