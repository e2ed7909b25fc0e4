#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hicl/taxonomy.hpp"

namespace hicl {

struct ClassPRF {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct LevelError {
    int level = 0;
    double error = 0.0;          // first misclassifications / examples still correct entering
    double unconditional = 0.0;  // first misclassifications / N
    long first_misclassified = 0;
    long cum_misclassified = 0;
};

struct HierScore {
    double hp = 0.0;
    double hr = 0.0;
    double hf1 = 0.0;
};

struct EvaluationReport {
    double micro_f1 = 0.0;
    double macro_f1 = 0.0;
    double hp = 0.0, hr = 0.0, hf1 = 0.0;
    double te = 0.0;
    std::map<NodeId, ClassPRF> per_class;
    std::vector<LevelError> levelwise;
};

// Pooled precision/recall over all classes; in the single-label
// single-prediction regime this equals plain accuracy.
double micro_f1(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                const std::set<NodeId>& classes);

// Mean per-class F1 over *all* of `classes` (absent classes contribute 0);
// per-class 0/0 counts as 0.
double macro_f1(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                const std::set<NodeId>& classes);

std::map<NodeId, ClassPRF> per_class_prf(const std::vector<NodeId>& truth,
                                         const std::vector<NodeId>& pred,
                                         const std::set<NodeId>& classes);

// Hierarchical P/R/F1 over ancestor sets (label included, root excluded).
HierScore hier_f1(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                  const Taxonomy& tax);

// Mean undirected tree-path length between predicted and true leaves.
double tree_error(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                  const Taxonomy& tax);

// First-error attribution along top-down decision paths: an example is
// misclassified at level k when its predicted node at level k is not the
// true label's ancestor at k and every shallower prediction was. error(k)
// conditions on the examples still correct entering k; the unconditional
// rate divides by N instead. Paths must start at the taxonomy root.
std::vector<LevelError> levelwise_error(const std::vector<NodeId>& truth,
                                        const std::vector<std::vector<NodeId>>& pred_paths,
                                        const Taxonomy& tax);

std::string report_to_text(const EvaluationReport& rep);
std::string per_class_csv(const std::map<NodeId, ClassPRF>& per_class);
std::string levelwise_csv(const std::vector<LevelError>& rows);

}  // namespace hicl
