#include "hicl/synth.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace hicl {

SynthData make_planted(const SynthConfig& cfg) {
    if (cfg.branches < 2 || cfg.mids_per_branch < 2 || cfg.leaves_per_mid < 2)
        throw data_error("planted synthetic needs >= 2 branches, mids per branch, and leaves per mid");
    if (cfg.moved_leaves < 1 || cfg.moved_leaves >= cfg.leaves_per_mid)
        throw data_error("moved_leaves must be in [1, leaves_per_mid)");
    if (cfg.train_per_class < 2 || cfg.test_per_class < 1)
        throw data_error("need at least 2 train and 1 test example per class");
    if (!(cfg.noise > 0.0)) throw data_error("noise must be positive");

    const int n_branches = cfg.branches;
    const int n_mids = n_branches * cfg.mids_per_branch;
    const int n_leaves = n_mids * cfg.leaves_per_mid;
    // Branch axis, mid axis, 2 shared leaf-layout dims, 2 noise dims, plus a
    // constant feature: the training objective has no intercept, so the
    // bias the clusters need comes in through the data.
    const int dim = 7;

    // Node ids: root 0, branches 1..B, mids B+1.., leaves after the mids.
    const NodeId root = 0;
    auto branch_id = [&](int b) { return 1 + b; };
    auto mid_id = [&](int m) { return 1 + n_branches + m; };
    auto leaf_id = [&](int l) { return 1 + n_branches + n_mids + l; };

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int b = 0; b < n_branches; ++b) edges.emplace_back(root, branch_id(b));
    for (int m = 0; m < n_mids; ++m) edges.emplace_back(branch_id(m / cfg.mids_per_branch), mid_id(m));

    // Clean leaf-to-mid assignment drives the feature geometry.
    std::vector<int> clean_mid_of_leaf(n_leaves);
    for (int l = 0; l < n_leaves; ++l) clean_mid_of_leaf[l] = l / cfg.leaves_per_mid;

    // Corrupt the last mid (under the last branch) with leaves of the first
    // mid (under branch 0). Taking every other circle position interleaves
    // the moved classes with their former siblings, so no single hyperplane
    // can separate either side of the donor's home region: the corrupted
    // node, the donor, and both branch tasks all become linearly infeasible
    // while every leaf stays cleanly separable.
    const int corrupted_mid = n_mids - 1;
    const int donor_mid = 0;
    if (cfg.leaves_per_mid < 2 * cfg.moved_leaves)
        throw data_error("moved_leaves must be at most half of leaves_per_mid");
    std::vector<int> tree_mid_of_leaf = clean_mid_of_leaf;
    for (int i = 0; i < cfg.moved_leaves; ++i)
        tree_mid_of_leaf[donor_mid * cfg.leaves_per_mid + 2 * i] = corrupted_mid;

    for (int l = 0; l < n_leaves; ++l) edges.emplace_back(mid_id(tree_mid_of_leaf[l]), leaf_id(l));

    SynthData out;
    out.taxonomy = Taxonomy::from_edges(edges);
    out.corrupted = mid_id(corrupted_mid);

    // Class means follow the *clean* structure. Separations sit at 4+ noise
    // sigmas for every consistent node's task, so only the corrupted node
    // (and the nodes its foreign children pass through) pays a loss.
    std::vector<std::vector<double>> mean(n_leaves, std::vector<double>(dim - 1, 0.0));
    const double pi = std::acos(-1.0);
    for (int l = 0; l < n_leaves; ++l) {
        int m = clean_mid_of_leaf[l];
        int b = m / cfg.mids_per_branch;
        int m_in_b = m % cfg.mids_per_branch;
        int pos = l % cfg.leaves_per_mid;
        double angle = 2.0 * pi * (pos + 0.5) / cfg.leaves_per_mid;
        mean[l][0] = (b - (n_branches - 1) / 2.0) * 10.0;
        mean[l][1] = (m_in_b - (cfg.mids_per_branch - 1) / 2.0) * 5.0;
        mean[l][2] = 3.0 * std::cos(angle);
        mean[l][3] = 3.0 * std::sin(angle);
    }

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, cfg.noise);
    auto sample = [&](Dataset& ds, int l) {
        SparseVector v;
        v.dim = dim;
        for (int j = 0; j < dim - 1; ++j) {
            double val = mean[l][j] + gauss(rng);
            if (val != 0.0) v.entries.push_back({j + 1, val});
        }
        v.entries.push_back({dim, 1.0});  // constant feature (intercept surrogate)
        ds.x.push_back(std::move(v));
        ds.y.push_back(leaf_id(l));
    };

    out.train.dim = out.test.dim = dim;
    for (int l = 0; l < n_leaves; ++l)
        for (int i = 0; i < cfg.train_per_class; ++i) sample(out.train, l);
    for (int l = 0; l < n_leaves; ++l)
        for (int i = 0; i < cfg.test_per_class; ++i) sample(out.test, l);
    return out;
}

}  // namespace hicl
