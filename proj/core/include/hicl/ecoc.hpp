#pragma once

#include <cstdint>
#include <vector>

#include "hicl/data.hpp"
#include "hicl/linreg.hpp"
#include "hicl/topdown.hpp"

namespace hicl {

// Random codeword matrix for error-correcting output codes: one row of B
// bits per leaf class, rows pairwise distinct.
struct CodeBook {
    std::vector<NodeId> class_ids;           // ascending
    std::vector<std::vector<uint8_t>> bits;  // |classes| x B, values 0/1
    uint64_t seed = 0;

    int bit_count() const { return bits.empty() ? 0 : static_cast<int>(bits.front().size()); }
    const std::vector<uint8_t>& codeword(NodeId cls) const;
};

// Bernoulli(1/2) bits; a colliding row is redrawn up to 100 times, then the
// call fails. Experiments use 32..1024 bits (enforced at the CLI boundary).
CodeBook random_codebook(const std::vector<NodeId>& classes, int bits, uint64_t seed);

// One-hot rows: bit b of class b's codeword is 1. Reduces ECOC training to
// flat one-vs-rest.
CodeBook identity_codebook(const std::vector<NodeId>& classes);

// One binary LR per bit column: example i is positive for bit b iff bit b of
// codeword(y_i) is 1. A column that is constant across the classes present
// yields a degenerate zero model (flagged in the result).
std::vector<TrainResult> ecoc_train(const Dataset& ds, const CodeBook& book,
                                    const TrainConfig& cfg, int jobs = 0);

// Hard decoding: predicted bit b = 1 iff score_b(x) >= 0; returns the class
// with minimum Hamming distance, ties to the lowest class id.
NodeId ecoc_predict(const std::vector<WeightVector>& models, const CodeBook& book,
                    const SparseVector& x);

// ECOC with the per-bit C grid selection + union refit protocol used for
// the hierarchical models.
struct EcocModel {
    CodeBook book;
    std::vector<NodeModel> bit_models;  // node field holds the bit index
    int dim = 0;
};

EcocModel ecoc_train_selected(const Dataset& train, const Dataset& valid, const CodeBook& book,
                              const HierTrainOptions& opts);

}  // namespace hicl
