#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hicl/sparse.hpp"
#include "hicl/taxonomy.hpp"

namespace hicl {

// Labeled sparse examples. Labels are leaf node-ids of the bound taxonomy.
struct Dataset {
    std::vector<SparseVector> x;
    std::vector<NodeId> y;
    int dim = 0;

    size_t size() const { return x.size(); }
};

// svmlight-style text: each nonempty line is "label idx:val idx:val ...".
// Indices must be strictly ascending 1-based integers; explicit zero values
// are dropped. dim is max(dim_hint, highest index seen).
// Throws data_error on empty input, non-numeric fields, or index order violations.
Dataset parse_svmlight(std::istream& in, int dim_hint = 0);
Dataset parse_svmlight(const std::string& text, int dim_hint = 0);

std::string serialize_svmlight(const Dataset& ds);

// tf-idf with l2 normalization over raw term counts:
// value(i,t) = count(i,t) * ln(N / df(t)), then each row scaled to unit
// Euclidean norm. All-zero rows stay all-zero. Throws on negative counts.
Dataset tfidf_l2(const Dataset& counts);

struct SplitResult {
    Dataset train;
    Dataset validation;
};

// Deterministic stratified split. Classes with >= 2 examples contribute to
// both sides (train share ~= ratio, at least one example each); a lone
// example always goes to the training side.
SplitResult split_train_validation(const Dataset& ds, double ratio, uint64_t seed);

// Checks every label is a leaf of the taxonomy; throws naming the offender.
void validate_labels(const Dataset& ds, const Taxonomy& tax);

}  // namespace hicl
