// hicl: top-down hierarchical classification with data-driven taxonomy
// flattening. Subcommands: train, predict, evaluate, flatten, sweep, synth.
//
// Exit codes: 0 success, 1 usage error, 2 data/configuration error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hicl/bundle.hpp"
#include "hicl/io.hpp"
#include "hicl/metrics.hpp"
#include "hicl/pipeline.hpp"
#include "hicl/synth.hpp"

namespace fs = std::filesystem;
using namespace hicl;

namespace {

std::vector<double> parse_grid(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw data_error(std::string("bad ") + what + " value '" + tok + "'");
        }
    }
    if (out.empty()) throw data_error(std::string("empty ") + what);
    return out;
}

bool all_blank(const std::string& text) {
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

struct CommonTrainArgs {
    std::string hierarchy_path;
    std::string train_path;
    std::string method = "tdlr";
    std::string c_grid_csv;
    std::string psi_grid_csv;
    std::optional<double> psi;
    std::string out_dir;
    uint64_t seed = 0;
    double split_ratio = 0.9;
    int jobs = 0;
    int codeword_bits = 64;
    bool tfidf = false;
};

void add_train_flags(CLI::App* cmd, CommonTrainArgs& a, bool need_method) {
    cmd->add_option("--hierarchy", a.hierarchy_path, "Hierarchy edge-list file")->required();
    cmd->add_option("--train", a.train_path, "Training data (svmlight format, .gz accepted)")
        ->required();
    auto* m = cmd->add_option("--method", a.method,
                              "tdlr|tlf|blf|mlf|level-inf|global-inf|flat-lr|ecoc");
    if (need_method) m->required();
    cmd->add_option("--c-grid", a.c_grid_csv, "Comma-separated C values (default 1e-3..1e3)");
    cmd->add_option("--psi", a.psi, "Fixed fitness parameter for INF methods");
    cmd->add_option("--psi-grid", a.psi_grid_csv,
                    "Comma-separated psi sweep grid (default 0.0,0.1,...,3.0)");
    cmd->add_option("--seed", a.seed, "Split / codebook seed");
    cmd->add_option("--split", a.split_ratio, "Training share of the train/validation split");
    cmd->add_option("--jobs", a.jobs, "Max parallel node fits (0 = all cores)");
    cmd->add_option("--codeword-bits", a.codeword_bits, "ECOC codeword length (32..1024)");
    cmd->add_flag("--tfidf", a.tfidf, "Apply tf-idf + l2 normalization to raw counts");
    cmd->add_option("--out", a.out_dir, "Output directory")->required();
}

PipelineConfig make_config(const CommonTrainArgs& a) {
    PipelineConfig cfg;
    cfg.method = parse_method(a.method);
    if (!a.c_grid_csv.empty()) cfg.c_grid = parse_grid(a.c_grid_csv, "--c-grid");
    if (!a.psi_grid_csv.empty()) cfg.psi_grid = parse_grid(a.psi_grid_csv, "--psi-grid");
    cfg.psi = a.psi;
    cfg.split_ratio = a.split_ratio;
    cfg.seed = a.seed;
    cfg.jobs = a.jobs;
    cfg.codeword_bits = a.codeword_bits;
    if (cfg.method == TrainMethod::ECOC && (a.codeword_bits < 32 || a.codeword_bits > 1024))
        throw data_error("--codeword-bits must be in [32, 1024]");
    return cfg;
}

Dataset load_dataset(const std::string& path, bool tfidf) {
    Dataset ds = parse_svmlight(read_text_file(path));
    if (tfidf) ds = tfidf_l2(ds);
    return ds;
}

int cmd_train(const CommonTrainArgs& a) {
    Taxonomy tax = Taxonomy::parse(read_text_file(a.hierarchy_path));
    Dataset data = load_dataset(a.train_path, a.tfidf);
    PipelineConfig cfg = make_config(a);

    PipelineResult res = run_training(tax, data, cfg);
    if (a.tfidf) res.bundle.meta["tfidf"] = "ln(N/df),l2";

    fs::path out(a.out_dir);
    save_bundle(res.bundle, out);
    if (!res.report.empty()) write_text_file(out / "flatten_report.csv", flatten_report_csv(res.report));
    if (res.sweep) write_text_file(out / "sweep.csv", sweep_csv(*res.sweep));

    std::cout << "trained method=" << to_string(res.bundle.method)
              << " nodes=" << res.bundle.models.size() << " removed=" << res.plan.removed.size()
              << " -> " << out.string() << "\n";
    return 0;
}

int cmd_predict(const std::string& model_dir, const std::string& test_path,
                const std::string& out_path, bool tfidf) {
    Bundle bundle = load_bundle(model_dir);
    std::string text = read_text_file(test_path);
    if (all_blank(text)) {  // empty test set: empty predictions, success
        write_text_file(out_path, "");
        std::cout << "0 predictions -> " << out_path << "\n";
        return 0;
    }
    Dataset ds = parse_svmlight(text);
    if (tfidf) ds = tfidf_l2(ds);
    check_dim(bundle, ds);

    std::vector<BundlePrediction> preds;
    preds.reserve(ds.size());
    for (const auto& x : ds.x) preds.push_back(bundle_predict(bundle, x));
    write_text_file(out_path, predictions_to_text(preds));
    std::cout << preds.size() << " predictions -> " << out_path << "\n";
    return 0;
}

std::vector<NodeId> parse_truth(const std::string& text) {
    // First whitespace-separated token per nonempty line; accepts both plain
    // label lists and svmlight files.
    std::vector<NodeId> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        long long label;
        if (ls >> label) out.push_back(static_cast<NodeId>(label));
    }
    if (out.empty()) throw data_error("truth file has no labels");
    return out;
}

int cmd_evaluate(const std::string& pred_path, const std::string& truth_path,
                 const std::string& hierarchy_path, const std::string& eval_hierarchy_path,
                 const std::string& out_dir) {
    ParsedPredictions preds = parse_predictions(read_text_file(pred_path));
    std::vector<NodeId> truth = parse_truth(read_text_file(truth_path));
    if (preds.leaves.size() != truth.size())
        throw data_error("prediction/truth size mismatch: " + std::to_string(preds.leaves.size()) +
                         " vs " + std::to_string(truth.size()));

    Taxonomy tax = Taxonomy::parse(read_text_file(hierarchy_path));
    Taxonomy eval_tax =
        eval_hierarchy_path.empty() ? tax : Taxonomy::parse(read_text_file(eval_hierarchy_path));

    EvaluationReport rep;
    const auto& leaves = eval_tax.leaves();
    std::set<NodeId> classes(leaves.begin(), leaves.end());
    rep.micro_f1 = micro_f1(truth, preds.leaves, classes);
    rep.macro_f1 = macro_f1(truth, preds.leaves, classes);
    rep.per_class = per_class_prf(truth, preds.leaves, classes);
    HierScore hs = hier_f1(truth, preds.leaves, eval_tax);
    rep.hp = hs.hp;
    rep.hr = hs.hr;
    rep.hf1 = hs.hf1;
    rep.te = tree_error(truth, preds.leaves, eval_tax);

    // Level-wise analysis needs full decision traces in the prediction
    // hierarchy; flat predictions carry only the leaf.
    bool have_paths = true;
    for (const auto& p : preds.paths)
        if (p.empty() || p.front() != tax.root()) have_paths = false;
    if (have_paths) rep.levelwise = levelwise_error(truth, preds.paths, tax);

    std::string summary = report_to_text(rep);
    std::cout << summary;
    if (!out_dir.empty()) {
        fs::path out(out_dir);
        write_text_file(out / "report.txt", summary);
        write_text_file(out / "per_class.csv", per_class_csv(rep.per_class));
        write_text_file(out / "per_level.csv", levelwise_csv(rep.levelwise));
    }
    return 0;
}

int cmd_flatten(const CommonTrainArgs& a) {
    Taxonomy tax = Taxonomy::parse(read_text_file(a.hierarchy_path));
    Dataset data = load_dataset(a.train_path, a.tfidf);
    PipelineConfig cfg = make_config(a);
    if (cfg.method != TrainMethod::LevelINF && cfg.method != TrainMethod::GlobalINF)
        throw data_error("flatten requires --method level-inf or global-inf");

    validate_labels(data, tax);
    SplitResult split = split_train_validation(data, cfg.split_ratio, cfg.seed);
    FlattenAnalysis analysis = analyze_inconsistency(tax, split.train, split.validation, cfg);

    Taxonomy flattened = tax.flatten(analysis.plan);
    std::ostringstream fanout;
    fanout << "level,children_before,children_after\n";
    auto before = tax.fanout_profile();
    auto after = flattened.fanout_profile();
    for (const auto& [level, n] : before)
        fanout << level << ',' << n << ',' << (after.count(level) ? after.at(level) : 0) << '\n';

    fs::path out(a.out_dir);
    write_text_file(out / "flatten_report.csv", flatten_report_csv(analysis.report));
    write_text_file(out / "flattened_hierarchy.txt", flattened.to_edge_list());
    write_text_file(out / "fanout.csv", fanout.str());
    if (analysis.sweep) write_text_file(out / "sweep.csv", sweep_csv(*analysis.sweep));

    std::cout << "psi=" << analysis.psi_used << " removed=" << analysis.plan.removed.size()
              << " -> " << out.string() << "\n";
    return 0;
}

int cmd_sweep(CommonTrainArgs a) {
    a.psi.reset();  // force the sweep even if --psi slipped in
    Taxonomy tax = Taxonomy::parse(read_text_file(a.hierarchy_path));
    Dataset data = load_dataset(a.train_path, a.tfidf);
    PipelineConfig cfg = make_config(a);
    if (cfg.method != TrainMethod::LevelINF && cfg.method != TrainMethod::GlobalINF)
        throw data_error("sweep requires --method level-inf or global-inf");
    cfg.psi.reset();

    validate_labels(data, tax);
    SplitResult split = split_train_validation(data, cfg.split_ratio, cfg.seed);
    FlattenAnalysis analysis = analyze_inconsistency(tax, split.train, split.validation, cfg);

    fs::path out(a.out_dir);
    write_text_file(out / "sweep.csv", sweep_csv(*analysis.sweep));
    write_text_file(out / "flatten_report.csv", flatten_report_csv(analysis.report));

    std::cout << "best_psi=" << analysis.sweep->best_psi
              << " best_macro_f1=" << analysis.sweep->best_score << " -> " << out.string() << "\n";
    return 0;
}

int cmd_synth(const std::string& out_dir, uint64_t seed, int train_per_class, int test_per_class,
              double noise) {
    SynthConfig scfg;
    scfg.seed = seed;
    scfg.train_per_class = train_per_class;
    scfg.test_per_class = test_per_class;
    scfg.noise = noise;
    SynthData data = make_planted(scfg);

    fs::path out(out_dir);
    write_text_file(out / "hierarchy.txt", data.taxonomy.to_edge_list());
    write_text_file(out / "train.svm", serialize_svmlight(data.train));
    write_text_file(out / "test.svm", serialize_svmlight(data.test));
    std::ostringstream meta;
    meta << "seed=" << seed << "\ncorrupted_node=" << data.corrupted << "\n";
    write_text_file(out / "synth_meta.txt", meta.str());

    std::cout << "synthetic set: " << data.train.size() << " train / " << data.test.size()
              << " test, corrupted node " << data.corrupted << " -> " << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Top-down hierarchical classification with inconsistent-node flattening"};
    app.require_subcommand(1);

    CommonTrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "Train a model bundle");
    add_train_flags(train_cmd, train_args, true);

    std::string model_dir, test_path, pred_out;
    bool predict_tfidf = false;
    auto* predict_cmd = app.add_subcommand("predict", "Predict with a saved bundle");
    predict_cmd->add_option("--model", model_dir, "Bundle directory")->required();
    predict_cmd->add_option("--test", test_path, "Test data (svmlight, .gz accepted)")->required();
    predict_cmd->add_option("--out", pred_out, "Predictions output file")->required();
    predict_cmd->add_flag("--tfidf", predict_tfidf, "Apply tf-idf + l2 to raw counts");

    std::string ev_pred, ev_truth, ev_hier, ev_eval_hier, ev_out;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against truth");
    eval_cmd->add_option("--pred", ev_pred, "Predictions file")->required();
    eval_cmd->add_option("--truth", ev_truth, "Truth labels (plain or svmlight)")->required();
    eval_cmd->add_option("--hierarchy", ev_hier, "Hierarchy the predictions were made in")
        ->required();
    eval_cmd->add_option("--eval-hierarchy", ev_eval_hier,
                         "Hierarchy for hF1/TE (defaults to --hierarchy)");
    eval_cmd->add_option("--out", ev_out, "Report output directory");

    CommonTrainArgs flatten_args;
    auto* flatten_cmd = app.add_subcommand("flatten", "Inconsistency report only, no final model");
    add_train_flags(flatten_cmd, flatten_args, true);

    CommonTrainArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Psi sweep curve (validation macro-F1)");
    add_train_flags(sweep_cmd, sweep_args, true);

    std::string synth_out;
    uint64_t synth_seed = 1;
    int synth_train = 25, synth_test = 15;
    double synth_noise = 1.0;
    auto* synth_cmd = app.add_subcommand("synth", "Planted-inconsistency synthetic dataset");
    synth_cmd->add_option("--out", synth_out, "Output directory")->required();
    synth_cmd->add_option("--seed", synth_seed, "Generator seed");
    synth_cmd->add_option("--train-per-class", synth_train, "Training examples per leaf class");
    synth_cmd->add_option("--test-per-class", synth_test, "Test examples per leaf class");
    synth_cmd->add_option("--noise", synth_noise, "Gaussian noise sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors are exit 1
    }

    try {
        if (*train_cmd) return cmd_train(train_args);
        if (*predict_cmd) return cmd_predict(model_dir, test_path, pred_out, predict_tfidf);
        if (*eval_cmd) return cmd_evaluate(ev_pred, ev_truth, ev_hier, ev_eval_hier, ev_out);
        if (*flatten_cmd) return cmd_flatten(flatten_args);
        if (*sweep_cmd) return cmd_sweep(sweep_args);
        if (*synth_cmd)
            return cmd_synth(synth_out, synth_seed, synth_train, synth_test, synth_noise);
    } catch (const numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
