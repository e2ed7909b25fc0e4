#include "hicl/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

namespace hicl {

namespace {

double parse_double(const std::string& tok, size_t lineno, const char* what) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw data_error("line " + std::to_string(lineno) + ": non-numeric " + what + " '" + tok +
                         "'");
    }
    if (pos != tok.size())
        throw data_error("line " + std::to_string(lineno) + ": non-numeric " + what + " '" + tok +
                         "'");
    if (!std::isfinite(v))
        throw data_error("line " + std::to_string(lineno) + ": non-finite " + what + " '" + tok +
                         "'");
    return v;
}

long long parse_int(const std::string& tok, size_t lineno, const char* what) {
    size_t pos = 0;
    long long v;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw data_error("line " + std::to_string(lineno) + ": non-numeric " + what + " '" + tok +
                         "'");
    }
    if (pos != tok.size())
        throw data_error("line " + std::to_string(lineno) + ": non-numeric " + what + " '" + tok +
                         "'");
    return v;
}

}  // namespace

Dataset parse_svmlight(std::istream& in, int dim_hint) {
    Dataset ds;
    ds.dim = std::max(0, dim_hint);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line

        NodeId label = static_cast<NodeId>(parse_int(tok, lineno, "label"));
        SparseVector v;
        int prev_index = 0;
        while (ls >> tok) {
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw data_error("line " + std::to_string(lineno) + ": expected idx:val, got '" +
                                 tok + "'");
            long long idx = parse_int(tok.substr(0, colon), lineno, "feature index");
            double val = parse_double(tok.substr(colon + 1), lineno, "feature value");
            if (idx < 1)
                throw data_error("line " + std::to_string(lineno) + ": feature index " +
                                 std::to_string(idx) + " is not positive");
            if (idx <= prev_index)
                throw data_error("line " + std::to_string(lineno) +
                                 ": feature indices not strictly ascending at index " +
                                 std::to_string(idx));
            prev_index = static_cast<int>(idx);
            if (val != 0.0) v.entries.push_back({static_cast<int>(idx), val});
            ds.dim = std::max(ds.dim, static_cast<int>(idx));
        }
        ds.x.push_back(std::move(v));
        ds.y.push_back(label);
    }
    if (ds.x.empty()) throw data_error("empty dataset: no example lines found");
    for (auto& v : ds.x) v.dim = ds.dim;
    return ds;
}

Dataset parse_svmlight(const std::string& text, int dim_hint) {
    std::istringstream in(text);
    return parse_svmlight(in, dim_hint);
}

std::string serialize_svmlight(const Dataset& ds) {
    std::ostringstream os;
    char buf[64];
    for (size_t i = 0; i < ds.size(); ++i) {
        os << ds.y[i];
        for (const auto& e : ds.x[i].entries) {
            std::snprintf(buf, sizeof(buf), "%.17g", e.value);
            os << ' ' << e.index << ':' << buf;
        }
        os << '\n';
    }
    return os.str();
}

Dataset tfidf_l2(const Dataset& counts) {
    const size_t n = counts.size();
    if (n == 0) throw data_error("tf-idf on empty dataset");

    std::unordered_map<int, size_t> df;
    for (const auto& v : counts.x) {
        for (const auto& e : v.entries) {
            if (e.value < 0.0)
                throw data_error("tf-idf input has negative count at feature " +
                                 std::to_string(e.index));
            df[e.index] += 1;
        }
    }

    Dataset out;
    out.dim = counts.dim;
    out.y = counts.y;
    out.x.reserve(n);
    const double logn = std::log(static_cast<double>(n));
    for (const auto& v : counts.x) {
        SparseVector w;
        w.dim = counts.dim;
        for (const auto& e : v.entries) {
            double idf = logn - std::log(static_cast<double>(df.at(e.index)));
            double val = e.value * idf;
            if (val != 0.0) w.entries.push_back({e.index, val});
        }
        double norm = std::sqrt(w.squared_norm());
        if (norm > 0.0)
            for (auto& e : w.entries) e.value /= norm;
        out.x.push_back(std::move(w));
    }
    return out;
}

SplitResult split_train_validation(const Dataset& ds, double ratio, uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw data_error("split ratio must be in (0, 1), got " + std::to_string(ratio));
    if (ds.size() < 2) throw data_error("need at least 2 examples to split");

    std::map<NodeId, std::vector<size_t>> by_class;
    for (size_t i = 0; i < ds.size(); ++i) by_class[ds.y[i]].push_back(i);

    std::mt19937_64 rng(seed);
    std::vector<size_t> train_idx, valid_idx;
    for (auto& [label, idx] : by_class) {
        (void)label;
        if (idx.size() == 1) {
            train_idx.push_back(idx[0]);  // lone example never goes to validation
            continue;
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        auto m = static_cast<long long>(idx.size());
        long long n_train = std::llround(ratio * static_cast<double>(m));
        n_train = std::clamp(n_train, 1LL, m - 1);
        for (long long i = 0; i < m; ++i)
            (i < n_train ? train_idx : valid_idx).push_back(idx[i]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(valid_idx.begin(), valid_idx.end());

    SplitResult r;
    r.train.dim = r.validation.dim = ds.dim;
    for (size_t i : train_idx) {
        r.train.x.push_back(ds.x[i]);
        r.train.y.push_back(ds.y[i]);
    }
    for (size_t i : valid_idx) {
        r.validation.x.push_back(ds.x[i]);
        r.validation.y.push_back(ds.y[i]);
    }
    return r;
}

void validate_labels(const Dataset& ds, const Taxonomy& tax) {
    for (NodeId y : ds.y) {
        if (!tax.contains(y))
            throw data_error("label " + std::to_string(y) + " is not a node of the taxonomy");
        if (!tax.is_leaf(y))
            throw data_error("label " + std::to_string(y) + " is not a leaf of the taxonomy");
    }
}

}  // namespace hicl
