#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hicl/bundle.hpp"
#include "hicl/inf.hpp"

namespace hicl {

// End-to-end training configuration (split, per-node C search, optional
// inconsistency analysis, final refit).
struct PipelineConfig {
    TrainMethod method = TrainMethod::TDLR;
    std::vector<double> c_grid = default_c_grid();
    std::optional<double> psi;  // fixed fitness parameter; swept over psi_grid when absent
    std::vector<double> psi_grid = default_psi_grid();
    double split_ratio = 0.9;
    uint64_t seed = 0;
    int jobs = 0;
    int codeword_bits = 64;
    double grad_tol = 1e-4;
    int max_iter = 1000;
};

struct FlattenReportRow {
    NodeId node = -1;
    int level = 0;
    double fstar = 0.0;
    double tau = 0.0;
    bool flagged = false;
};

// Inconsistency analysis on the original taxonomy: stage-one models trained
// on the train split only, f* per node from the validation split, and the
// selected plan (psi fixed or chosen by the validation macro-F1 sweep).
struct FlattenAnalysis {
    HierModel stage1;  // fstar filled
    FlatteningPlan plan;
    double psi_used = 0.0;
    std::vector<FlattenReportRow> report;
    std::optional<SweepResult> sweep;
};

FlattenAnalysis analyze_inconsistency(const Taxonomy& tax, const Dataset& train,
                                      const Dataset& valid, const PipelineConfig& cfg);

struct PipelineResult {
    Bundle bundle;
    FlatteningPlan plan;  // empty removed set for TDLR/FlatLR/ECOC
    std::vector<FlattenReportRow> report;
    std::optional<SweepResult> sweep;
};

// Full protocol: split -> (optional hierarchy modification) -> per-node C
// selection -> refit on the whole training set -> bundle with run metadata.
PipelineResult run_training(const Taxonomy& tax, const Dataset& full_train,
                            const PipelineConfig& cfg);

// Macro-F1 of top-down predictions on a dataset, over the model's leaf set.
double macro_f1_topdown(const HierModel& hm, const Dataset& ds);

// Depth-1 taxonomy over the leaves of `tax` (for flat one-vs-rest training).
Taxonomy flat_taxonomy(const Taxonomy& tax);

std::string flatten_report_csv(const std::vector<FlattenReportRow>& rows);
std::string sweep_csv(const SweepResult& sweep);

}  // namespace hicl
