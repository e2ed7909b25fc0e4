#pragma once

#include <cmath>
#include <vector>

#include "hicl/sparse.hpp"

namespace hicl {

struct TrainConfig {
    double C = 1.0;          // misclassification penalty, > 0
    double grad_tol = 1e-4;  // relative gradient-norm stopping tolerance
    int max_iter = 1000;
};

struct TrainResult {
    WeightVector w;
    bool degenerate = false;  // single-class data: w stays zero, node is untrainable
    bool converged = false;
    int iterations = 0;
    std::vector<double> objective_trace;  // objective at start and after each accepted step
};

// Stable ln(1 + exp(z)) = max(z, 0) + ln(1 + exp(-|z|)).
inline double log1p_exp(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
}

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// C * sum_i ln(1 + exp(-y_i <w, x_i>)) + 0.5 ||w||^2, with y_i in {-1, +1}.
double objective(const WeightVector& w, const std::vector<SparseVector>& X,
                 const std::vector<int>& y, double C);

// w - C * sum_i y_i * sigmoid(-y_i <w, x_i>) * x_i
WeightVector gradient(const WeightVector& w, const std::vector<SparseVector>& X,
                      const std::vector<int>& y, double C);

// Newton-CG with Armijo backtracking on the strictly convex objective.
// Stops when ||grad(w)|| <= grad_tol * max(1, ||grad(0)||) or max_iter.
// If every label is identical the data carries no binary signal; the result
// is the zero vector with the degenerate flag set.
TrainResult train(const std::vector<SparseVector>& X, const std::vector<int>& y, int dim,
                  const TrainConfig& cfg, const WeightVector* warm_start = nullptr);

inline double score(const WeightVector& w, const SparseVector& x) { return dot(w, x); }
inline double prob(const WeightVector& w, const SparseVector& x) { return sigmoid(dot(w, x)); }

}  // namespace hicl
