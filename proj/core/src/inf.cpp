#include "hicl/inf.hpp"

#include <algorithm>
#include <cmath>

#include "hicl/parallel.hpp"

namespace hicl {

ThresholdSpec threshold(const std::vector<double>& values, double psi, std::optional<int> level) {
    if (values.empty()) throw data_error("threshold over an empty value set");
    if (psi < 0.0) throw data_error("psi must be nonnegative");

    ThresholdSpec spec;
    spec.level = level;
    spec.psi = psi;
    double sum = 0.0;
    for (double v : values) sum += v;
    spec.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - spec.mean) * (v - spec.mean);
    spec.stddev = std::sqrt(sq / static_cast<double>(values.size()));
    spec.tau = spec.mean + psi * spec.stddev;
    return spec;
}

double fstar(const NodeModel& model, const Dataset& valid, const Taxonomy& tax) {
    if (valid.size() == 0) throw data_error("validation set is empty");
    std::vector<int> yb = binary_labels(tax, valid.y, model.node);
    return objective(model.weights, valid.x, yb, model.C_used);
}

void compute_fstars(HierModel& hm, const Dataset& valid, int jobs) {
    const std::vector<NodeId> nodes = hm.taxonomy.nonroot_nodes();
    std::vector<double> values(nodes.size());
    parallel_for(nodes.size(), jobs,
                 [&](size_t i) { values[i] = fstar(hm.model(nodes[i]), valid, hm.taxonomy); });
    for (size_t i = 0; i < nodes.size(); ++i) hm.model(nodes[i]).fstar = values[i];
}

namespace {

double require_fstar(const HierModel& hm, NodeId n) {
    const NodeModel& m = hm.model(n);
    if (!m.fstar) throw data_error("node " + std::to_string(n) + " is missing its f* value");
    return *m.fstar;
}

}  // namespace

FlatteningPlan select_level_inf(const HierModel& hm, const std::map<int, double>& psi_per_level) {
    const Taxonomy& tax = hm.taxonomy;
    FlatteningPlan plan;
    plan.method = PlanMethod::LevelINF;
    for (int k = 1; k <= tax.depth(); ++k) {
        std::vector<NodeId> level_nodes = tax.nodes_at_level(k);
        if (level_nodes.empty()) continue;
        auto psi_it = psi_per_level.find(k);
        if (psi_it == psi_per_level.end())
            throw data_error("no psi given for level " + std::to_string(k));

        std::vector<double> values;
        values.reserve(level_nodes.size());
        for (NodeId n : level_nodes) values.push_back(require_fstar(hm, n));
        ThresholdSpec spec = threshold(values, psi_it->second, k);

        for (size_t i = 0; i < level_nodes.size(); ++i) {
            NodeId n = level_nodes[i];
            plan.fstar[n] = values[i];
            plan.tau[n] = spec.tau;
            if (values[i] > spec.tau && !tax.is_leaf(n)) plan.removed.insert(n);
        }
    }
    return plan;
}

FlatteningPlan select_level_inf(const HierModel& hm, double shared_psi) {
    std::map<int, double> per_level;
    for (int k = 1; k <= hm.taxonomy.depth(); ++k) per_level[k] = shared_psi;
    return select_level_inf(hm, per_level);
}

FlatteningPlan select_global_inf(const HierModel& hm, double psi) {
    const Taxonomy& tax = hm.taxonomy;
    const std::vector<NodeId> nodes = tax.nonroot_nodes();
    std::vector<double> values;
    values.reserve(nodes.size());
    for (NodeId n : nodes) values.push_back(require_fstar(hm, n));
    ThresholdSpec spec = threshold(values, psi);

    FlatteningPlan plan;
    plan.method = PlanMethod::GlobalINF;
    for (size_t i = 0; i < nodes.size(); ++i) {
        NodeId n = nodes[i];
        plan.fstar[n] = values[i];
        plan.tau[n] = spec.tau;
        if (values[i] > spec.tau && !tax.is_leaf(n)) plan.removed.insert(n);
    }
    return plan;
}

SweepResult sweep_psi(const std::vector<double>& grid,
                      const std::function<double(double)>& evaluate) {
    if (grid.empty()) throw data_error("empty psi grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    SweepResult res;
    res.best_score = -1.0;
    for (double psi : sorted) {
        double s = evaluate(psi);
        res.curve.push_back({psi, s});
        if (s > res.best_score) {  // strict: ties keep the smaller psi
            res.best_score = s;
            res.best_psi = psi;
        }
    }
    return res;
}

std::vector<double> default_psi_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 30; ++i) grid.push_back(static_cast<double>(i) / 10.0);
    return grid;
}

}  // namespace hicl
