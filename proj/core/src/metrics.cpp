#include "hicl/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hicl {

namespace {

struct Confusion {
    long tp = 0, fp = 0, fn = 0;
};

std::map<NodeId, Confusion> confusion_counts(const std::vector<NodeId>& truth,
                                             const std::vector<NodeId>& pred,
                                             const std::set<NodeId>& classes) {
    if (truth.size() != pred.size())
        throw data_error("truth and prediction lengths differ: " + std::to_string(truth.size()) +
                         " vs " + std::to_string(pred.size()));
    if (truth.empty()) throw data_error("no examples to evaluate");

    std::map<NodeId, Confusion> conf;
    for (NodeId c : classes) conf[c];
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == pred[i]) {
            conf[truth[i]].tp += 1;
        } else {
            conf[pred[i]].fp += 1;
            conf[truth[i]].fn += 1;
        }
    }
    return conf;
}

double f1_of(double p, double r) { return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

double micro_f1(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                const std::set<NodeId>& classes) {
    auto conf = confusion_counts(truth, pred, classes);
    long tp = 0, tp_fp = 0, tp_fn = 0;
    for (const auto& [c, k] : conf) {
        (void)c;
        tp += k.tp;
        tp_fp += k.tp + k.fp;
        tp_fn += k.tp + k.fn;
    }
    // Equal denominators (always true single-label): 2PR/(P+R) collapses to
    // P, which keeps the micro-F1 = accuracy identity exact.
    if (tp_fp == tp_fn)
        return tp_fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp_fp) : 0.0;
    double p = tp_fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp_fp) : 0.0;
    double r = tp_fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp_fn) : 0.0;
    return f1_of(p, r);
}

std::map<NodeId, ClassPRF> per_class_prf(const std::vector<NodeId>& truth,
                                         const std::vector<NodeId>& pred,
                                         const std::set<NodeId>& classes) {
    auto conf = confusion_counts(truth, pred, classes);
    std::map<NodeId, ClassPRF> out;
    for (NodeId c : classes) {
        const Confusion& k = conf[c];
        ClassPRF m;
        m.precision = (k.tp + k.fp) > 0 ? static_cast<double>(k.tp) / (k.tp + k.fp) : 0.0;
        m.recall = (k.tp + k.fn) > 0 ? static_cast<double>(k.tp) / (k.tp + k.fn) : 0.0;
        m.f1 = f1_of(m.precision, m.recall);
        out[c] = m;
    }
    return out;
}

double macro_f1(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                const std::set<NodeId>& classes) {
    if (classes.empty()) throw data_error("macro-F1 over an empty class set");
    auto per_class = per_class_prf(truth, pred, classes);
    double sum = 0.0;
    for (const auto& [c, m] : per_class) {
        (void)c;
        sum += m.f1;
    }
    return sum / static_cast<double>(classes.size());
}

HierScore hier_f1(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                  const Taxonomy& tax) {
    if (truth.size() != pred.size())
        throw data_error("truth and prediction lengths differ");
    if (truth.empty()) throw data_error("no examples to evaluate");

    long inter = 0, pred_total = 0, true_total = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
        // Ancestor sets include the label, exclude the root.
        std::vector<NodeId> at = tax.path_from_root(truth[i]);
        std::vector<NodeId> ap = tax.path_from_root(pred[i]);
        at.erase(at.begin());
        ap.erase(ap.begin());
        std::set<NodeId> ts(at.begin(), at.end());
        for (NodeId n : ap) inter += ts.count(n);
        pred_total += static_cast<long>(ap.size());
        true_total += static_cast<long>(at.size());
    }
    HierScore s;
    s.hp = pred_total > 0 ? static_cast<double>(inter) / static_cast<double>(pred_total) : 0.0;
    s.hr = true_total > 0 ? static_cast<double>(inter) / static_cast<double>(true_total) : 0.0;
    s.hf1 = f1_of(s.hp, s.hr);
    return s;
}

double tree_error(const std::vector<NodeId>& truth, const std::vector<NodeId>& pred,
                  const Taxonomy& tax) {
    if (truth.size() != pred.size())
        throw data_error("truth and prediction lengths differ");
    if (truth.empty()) throw data_error("no examples to evaluate");

    long total = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
        NodeId a = truth[i], b = pred[i];
        if (!tax.contains(a) || !tax.contains(b))
            throw data_error("label not in taxonomy");
        int steps = 0;
        while (tax.level(a) > tax.level(b)) {
            a = tax.parent(a);
            ++steps;
        }
        while (tax.level(b) > tax.level(a)) {
            b = tax.parent(b);
            ++steps;
        }
        while (a != b) {
            a = tax.parent(a);
            b = tax.parent(b);
            steps += 2;
        }
        total += steps;
    }
    return static_cast<double>(total) / static_cast<double>(truth.size());
}

std::vector<LevelError> levelwise_error(const std::vector<NodeId>& truth,
                                        const std::vector<std::vector<NodeId>>& pred_paths,
                                        const Taxonomy& tax) {
    if (truth.size() != pred_paths.size())
        throw data_error("truth and path counts differ");
    if (truth.empty()) throw data_error("no examples to evaluate");

    const int depth = tax.depth();
    std::vector<long> first_at(static_cast<size_t>(depth) + 1, 0);
    for (size_t i = 0; i < truth.size(); ++i) {
        const auto& path = pred_paths[i];
        if (path.empty() || path.front() != tax.root())
            throw data_error("prediction path " + std::to_string(i) +
                             " does not start at the root");
        std::vector<NodeId> true_path = tax.path_from_root(truth[i]);
        size_t common = std::min(path.size(), true_path.size());
        size_t k = 1;
        for (; k < common; ++k)
            if (path[k] != true_path[k]) break;
        if (k < common) {
            first_at[k] += 1;  // diverged at level k
        } else if (path.size() != true_path.size()) {
            first_at[common] += 1;  // one path ended early while agreeing so far
        }
    }

    std::vector<LevelError> rows;
    const long n = static_cast<long>(truth.size());
    long cum = 0;
    for (int k = 1; k <= depth; ++k) {
        LevelError row;
        row.level = k;
        row.first_misclassified = first_at[k];
        long entering = n - cum;
        row.error = entering > 0 ? static_cast<double>(first_at[k]) / entering : 0.0;
        row.unconditional = static_cast<double>(first_at[k]) / n;
        cum += first_at[k];
        row.cum_misclassified = cum;
        rows.push_back(row);
    }
    return rows;
}

std::string report_to_text(const EvaluationReport& rep) {
    char buf[64];
    std::ostringstream os;
    auto kv = [&](const char* key, double v) {
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        os << key << '=' << buf << '\n';
    };
    kv("micro_f1", rep.micro_f1);
    kv("macro_f1", rep.macro_f1);
    kv("hp", rep.hp);
    kv("hr", rep.hr);
    kv("hf1", rep.hf1);
    kv("tree_error", rep.te);
    return os.str();
}

std::string per_class_csv(const std::map<NodeId, ClassPRF>& per_class) {
    char buf[128];
    std::ostringstream os;
    os << "class,precision,recall,f1\n";
    for (const auto& [c, m] : per_class) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f", c, m.precision, m.recall, m.f1);
        os << buf << '\n';
    }
    return os.str();
}

std::string levelwise_csv(const std::vector<LevelError>& rows) {
    char buf[160];
    std::ostringstream os;
    os << "level,error,unconditional_error,first_misclassified,cum_misclassified\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%ld,%ld", r.level, r.error, r.unconditional,
                      r.first_misclassified, r.cum_misclassified);
        os << buf << '\n';
    }
    return os.str();
}

}  // namespace hicl
