#pragma once

#include <vector>

#include "hicl/error.hpp"

namespace hicl {

// Category node identifier. Non-negative; the hierarchy file assigns them.
using NodeId = int;

// One feature of a sparse example. Indices are 1-based (svmlight convention).
struct FeatureEntry {
    int index = 0;
    double value = 0.0;
};

// Sparse feature vector: strictly ascending 1-based indices, nonzero finite values.
struct SparseVector {
    std::vector<FeatureEntry> entries;
    int dim = 0;

    double squared_norm() const {
        double s = 0.0;
        for (const auto& e : entries) s += e.value * e.value;
        return s;
    }
};

// Dense weight vector; feature index i (1-based) reads w[i-1].
using WeightVector = std::vector<double>;

inline double dot(const WeightVector& w, const SparseVector& x) {
    double s = 0.0;
    for (const auto& e : x.entries) {
        if (e.index < 1 || static_cast<size_t>(e.index) > w.size())
            throw data_error("dimension mismatch: feature index " + std::to_string(e.index) +
                             " out of range for weight vector of size " + std::to_string(w.size()));
        s += w[e.index - 1] * e.value;
    }
    return s;
}

// w += a * x
inline void axpy(double a, const SparseVector& x, WeightVector& w) {
    for (const auto& e : x.entries) {
        if (e.index < 1 || static_cast<size_t>(e.index) > w.size())
            throw data_error("dimension mismatch: feature index " + std::to_string(e.index) +
                             " out of range for weight vector of size " + std::to_string(w.size()));
        w[e.index - 1] += a * e.value;
    }
}

}  // namespace hicl
