#include "hicl/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "hicl/io.hpp"
#include "hicl/metrics.hpp"

namespace hicl {

namespace {

std::string join_doubles(const std::vector<double>& vals) {
    std::ostringstream os;
    for (size_t i = 0; i < vals.size(); ++i) os << (i ? "," : "") << format_g17(vals[i]);
    return os.str();
}

std::string join_nodes(const std::set<NodeId>& nodes) {
    std::ostringstream os;
    bool first = true;
    for (NodeId n : nodes) {
        os << (first ? "" : ",") << n;
        first = false;
    }
    return os.str();
}

std::map<std::string, std::string> base_meta(const PipelineConfig& cfg) {
    std::map<std::string, std::string> meta;
    meta["seed"] = std::to_string(cfg.seed);
    meta["split_ratio"] = format_g17(cfg.split_ratio);
    meta["c_grid"] = join_doubles(cfg.c_grid);
    meta["grad_tol"] = format_g17(cfg.grad_tol);
    meta["max_iter"] = std::to_string(cfg.max_iter);
    meta["c_selection_metric"] = "binary_f1";
    meta["c_tie_break"] = "smallest";
    meta["std_form"] = "population";
    meta["prediction_tie_break"] = "lowest_node_id";
    return meta;
}

HierTrainOptions make_opts(const PipelineConfig& cfg, bool refit) {
    HierTrainOptions opts;
    opts.c_grid = cfg.c_grid;
    opts.grad_tol = cfg.grad_tol;
    opts.max_iter = cfg.max_iter;
    opts.jobs = cfg.jobs;
    opts.refit_on_union = refit;
    return opts;
}

std::vector<FlattenReportRow> build_report(const Taxonomy& tax, const FlatteningPlan& plan) {
    std::vector<FlattenReportRow> rows;
    for (NodeId n : tax.nonroot_nodes()) {
        FlattenReportRow row;
        row.node = n;
        row.level = tax.level(n);
        auto fit = plan.fstar.find(n);
        auto tit = plan.tau.find(n);
        row.fstar = fit != plan.fstar.end() ? fit->second : 0.0;
        row.tau = tit != plan.tau.end() ? tit->second : 0.0;
        row.flagged = plan.removed.count(n) != 0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

double macro_f1_topdown(const HierModel& hm, const Dataset& ds) {
    std::vector<NodeId> preds;
    preds.reserve(ds.size());
    for (const auto& x : ds.x) preds.push_back(predict_topdown(hm, x).leaf);
    const auto& leaves = hm.taxonomy.leaves();
    return macro_f1(ds.y, preds, std::set<NodeId>(leaves.begin(), leaves.end()));
}

Taxonomy flat_taxonomy(const Taxonomy& tax) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId leaf : tax.leaves()) edges.emplace_back(tax.root(), leaf);
    return Taxonomy::from_edges(edges);
}

FlattenAnalysis analyze_inconsistency(const Taxonomy& tax, const Dataset& train,
                                      const Dataset& valid, const PipelineConfig& cfg) {
    if (cfg.method != TrainMethod::LevelINF && cfg.method != TrainMethod::GlobalINF)
        throw data_error("inconsistency analysis requires method level-inf or global-inf");
    if (valid.size() == 0) throw data_error("inconsistency analysis requires a validation split");

    FlattenAnalysis out;
    out.stage1 = train_hierarchy(tax, train, valid, make_opts(cfg, /*refit=*/false));
    compute_fstars(out.stage1, valid, cfg.jobs);

    auto select = [&](double psi) {
        return cfg.method == TrainMethod::LevelINF ? select_level_inf(out.stage1, psi)
                                                   : select_global_inf(out.stage1, psi);
    };

    if (cfg.psi) {
        out.psi_used = *cfg.psi;
        out.plan = select(*cfg.psi);
    } else {
        // Identical plans give identical retrains; cache by removed set.
        std::map<std::set<NodeId>, double> memo;
        auto evaluate = [&](double psi) {
            FlatteningPlan plan = select(psi);
            auto it = memo.find(plan.removed);
            if (it != memo.end()) return it->second;
            Taxonomy flat = tax.flatten(plan);
            HierModel hm = train_hierarchy(flat, train, valid, make_opts(cfg, /*refit=*/false));
            double score = macro_f1_topdown(hm, valid);
            memo.emplace(plan.removed, score);
            return score;
        };
        out.sweep = sweep_psi(cfg.psi_grid, evaluate);
        out.psi_used = out.sweep->best_psi;
        out.plan = select(out.psi_used);
    }
    out.report = build_report(tax, out.plan);
    return out;
}

PipelineResult run_training(const Taxonomy& tax, const Dataset& full_train,
                            const PipelineConfig& cfg) {
    validate_labels(full_train, tax);
    SplitResult split = split_train_validation(full_train, cfg.split_ratio, cfg.seed);
    const Dataset& tr = split.train;
    const Dataset& va = split.validation;

    PipelineResult result;
    std::map<std::string, std::string> meta = base_meta(cfg);

    switch (cfg.method) {
        case TrainMethod::TDLR: {
            HierModel hm = train_hierarchy(tax, tr, va, make_opts(cfg, true));
            result.bundle = make_bundle(cfg.method, hm, std::move(meta));
            break;
        }
        case TrainMethod::TLF:
        case TrainMethod::BLF:
        case TrainMethod::MLF: {
            FlatteningPlan plan = cfg.method == TrainMethod::TLF   ? tlf_plan(tax)
                                  : cfg.method == TrainMethod::BLF ? blf_plan(tax)
                                                                   : mlf_plan(tax);
            Taxonomy flat = tax.flatten(plan);
            HierModel hm = train_hierarchy(flat, tr, va, make_opts(cfg, true));
            meta["removed"] = join_nodes(plan.removed);
            result.bundle = make_bundle(cfg.method, hm, std::move(meta));
            result.plan = std::move(plan);
            break;
        }
        case TrainMethod::LevelINF:
        case TrainMethod::GlobalINF: {
            FlattenAnalysis analysis = analyze_inconsistency(tax, tr, va, cfg);
            Taxonomy flat = tax.flatten(analysis.plan);
            HierModel hm = train_hierarchy(flat, tr, va, make_opts(cfg, true));
            meta["psi"] = format_g17(analysis.psi_used);
            if (analysis.sweep) meta["psi_grid"] = join_doubles(cfg.psi_grid);
            meta["removed"] = join_nodes(analysis.plan.removed);
            result.bundle = make_bundle(cfg.method, hm, std::move(meta));
            result.plan = std::move(analysis.plan);
            result.report = std::move(analysis.report);
            result.sweep = std::move(analysis.sweep);
            break;
        }
        case TrainMethod::FlatLR: {
            HierModel hm = train_hierarchy(flat_taxonomy(tax), tr, va, make_opts(cfg, true));
            result.bundle = make_bundle(cfg.method, hm, std::move(meta));
            break;
        }
        case TrainMethod::ECOC: {
            CodeBook book = random_codebook(tax.leaves(), cfg.codeword_bits, cfg.seed);
            EcocModel em = ecoc_train_selected(tr, va, book, make_opts(cfg, true));
            result.bundle = make_ecoc_bundle(em, flat_taxonomy(tax), std::move(meta));
            break;
        }
    }
    return result;
}

std::string flatten_report_csv(const std::vector<FlattenReportRow>& rows) {
    std::ostringstream os;
    os << "node,level,fstar,tau,flagged\n";
    for (const auto& r : rows)
        os << r.node << ',' << r.level << ',' << format_g17(r.fstar) << ',' << format_g17(r.tau)
           << ',' << (r.flagged ? 1 : 0) << '\n';
    return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
    char buf[64];
    std::ostringstream os;
    os << "psi,macro_f1\n";
    for (const auto& p : sweep.curve) {
        std::snprintf(buf, sizeof(buf), "%g,%.6f", p.psi, p.score);
        os << buf << '\n';
    }
    return os.str();
}

}  // namespace hicl
