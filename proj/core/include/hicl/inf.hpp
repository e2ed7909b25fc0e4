#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hicl/topdown.hpp"

namespace hicl {

// Threshold tau = mean + psi * std over a set of validation objective values.
// level is set for per-level thresholds and empty for the global one.
struct ThresholdSpec {
    std::optional<int> level;
    double mean = 0.0;
    double stddev = 0.0;  // population form (divisor n)
    double psi = 0.0;
    double tau = 0.0;
};

// mean + psi * population standard deviation of `values`.
ThresholdSpec threshold(const std::vector<double>& values, double psi,
                        std::optional<int> level = std::nullopt);

// Validation objective for one node model: the training objective evaluated
// on the validation set with the node's inclusive-policy binary labels and
// its selected C (regularization term included).
double fstar(const NodeModel& model, const Dataset& valid, const Taxonomy& tax);

// Fills model.fstar for every non-root node.
void compute_fstars(HierModel& hm, const Dataset& valid, int jobs = 0);

// Level-wise inconsistent node selection: for each level k, pool the f*
// values of all nodes at that level (leaves included), set tau_k, and flag
// the internal nodes above it. psi_per_level must cover levels 1..depth.
FlatteningPlan select_level_inf(const HierModel& hm, const std::map<int, double>& psi_per_level);
FlatteningPlan select_level_inf(const HierModel& hm, double shared_psi);

// Global selection: one threshold over the f* values of all non-root nodes
// (leaves included in the pool); only internal nodes can be flagged.
FlatteningPlan select_global_inf(const HierModel& hm, double psi);

struct SweepPoint {
    double psi = 0.0;
    double score = 0.0;  // validation macro-F1
};

struct SweepResult {
    double best_psi = 0.0;
    double best_score = 0.0;
    std::vector<SweepPoint> curve;  // ascending psi
};

// Evaluates `evaluate(psi)` over the grid and returns the psi with the
// maximum score; ties go to the smaller psi (more flattening).
SweepResult sweep_psi(const std::vector<double>& grid,
                      const std::function<double(double)>& evaluate);

std::vector<double> default_psi_grid();  // 0.0, 0.1, ..., 3.0

}  // namespace hicl
