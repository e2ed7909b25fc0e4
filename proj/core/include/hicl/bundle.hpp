#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>

#include "hicl/data.hpp"
#include "hicl/ecoc.hpp"
#include "hicl/topdown.hpp"

namespace hicl {

enum class TrainMethod { TDLR, TLF, BLF, MLF, LevelINF, GlobalINF, FlatLR, ECOC };

std::string to_string(TrainMethod m);
TrainMethod parse_method(const std::string& name);
bool is_hierarchical(TrainMethod m);  // predicts by top-down descent

// A persisted classifier: the taxonomy it predicts in, one weight vector per
// node (per bit for ECOC), and the run metadata needed to reproduce it.
//
// On-disk layout (directory):
//   taxonomy.txt  edge list "parent child", one per line
//   meta.txt      key=value lines, sorted by key
//   models.txt    per node: "node <id> C <val> nnz <k>" then k idx:weight pairs
//   codebook.txt  (ECOC only) seed/bits/classes header then "<class> <bitstring>"
//
// Weights below 1e-12 absolute are pruned at construction, and all values
// are written with 17 significant digits, so save/load round-trips are exact.
struct Bundle {
    TrainMethod method = TrainMethod::TDLR;
    Taxonomy taxonomy;
    int dim = 0;
    std::unordered_map<NodeId, NodeModel> models;
    std::optional<CodeBook> codebook;
    std::map<std::string, std::string> meta;
};

Bundle make_bundle(TrainMethod method, const HierModel& hm,
                   std::map<std::string, std::string> meta);
Bundle make_ecoc_bundle(const EcocModel& em, const Taxonomy& leaf_taxonomy,
                        std::map<std::string, std::string> meta);

void save_bundle(const Bundle& bundle, const std::filesystem::path& dir);
Bundle load_bundle(const std::filesystem::path& dir);

// Leaf prediction plus the decision path. Hierarchical methods return the
// full root-to-leaf trace; flat methods and ECOC return just the leaf.
struct BundlePrediction {
    NodeId leaf = -1;
    std::vector<NodeId> path;
};

BundlePrediction bundle_predict(const Bundle& bundle, const SparseVector& x);

// Throws when the data's max feature index exceeds the bundle dimension.
void check_dim(const Bundle& bundle, const Dataset& ds);

// Predictions file: one "<leaf>\t<path joined by spaces>" line per example.
std::string predictions_to_text(const std::vector<BundlePrediction>& preds);
struct ParsedPredictions {
    std::vector<NodeId> leaves;
    std::vector<std::vector<NodeId>> paths;
};
ParsedPredictions parse_predictions(const std::string& text);

}  // namespace hicl
