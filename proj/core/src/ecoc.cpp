#include "hicl/ecoc.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "hicl/parallel.hpp"

namespace hicl {

const std::vector<uint8_t>& CodeBook::codeword(NodeId cls) const {
    auto it = std::lower_bound(class_ids.begin(), class_ids.end(), cls);
    if (it == class_ids.end() || *it != cls)
        throw data_error("class " + std::to_string(cls) + " is not in the codebook");
    return bits[static_cast<size_t>(it - class_ids.begin())];
}

CodeBook random_codebook(const std::vector<NodeId>& classes, int bits, uint64_t seed) {
    if (classes.empty()) throw data_error("codebook needs at least one class");
    if (bits < 1) throw data_error("codeword length must be positive");

    CodeBook book;
    book.class_ids = classes;
    std::sort(book.class_ids.begin(), book.class_ids.end());
    book.seed = seed;

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::set<std::vector<uint8_t>> seen;
    for (size_t c = 0; c < book.class_ids.size(); ++c) {
        std::vector<uint8_t> row(bits);
        int attempts = 0;
        do {
            if (++attempts > 100)
                throw data_error("could not draw " + std::to_string(book.class_ids.size()) +
                                 " distinct codewords of " + std::to_string(bits) + " bits");
            for (auto& b : row) b = coin(rng) ? 1 : 0;
        } while (seen.count(row));
        seen.insert(row);
        book.bits.push_back(std::move(row));
    }
    return book;
}

CodeBook identity_codebook(const std::vector<NodeId>& classes) {
    if (classes.empty()) throw data_error("codebook needs at least one class");
    CodeBook book;
    book.class_ids = classes;
    std::sort(book.class_ids.begin(), book.class_ids.end());
    const size_t n = book.class_ids.size();
    book.bits.assign(n, std::vector<uint8_t>(n, 0));
    for (size_t c = 0; c < n; ++c) book.bits[c][c] = 1;
    return book;
}

namespace {

std::vector<int> bit_labels(const Dataset& ds, const CodeBook& book, int bit) {
    std::vector<int> y;
    y.reserve(ds.size());
    for (NodeId cls : ds.y) y.push_back(book.codeword(cls)[bit] ? 1 : -1);
    return y;
}

}  // namespace

std::vector<TrainResult> ecoc_train(const Dataset& ds, const CodeBook& book,
                                    const TrainConfig& cfg, int jobs) {
    for (NodeId y : ds.y) book.codeword(y);  // every class must be present in the book
    const int B = book.bit_count();
    std::vector<TrainResult> out(B);
    parallel_for(static_cast<size_t>(B), jobs, [&](size_t b) {
        std::vector<int> y = bit_labels(ds, book, static_cast<int>(b));
        out[b] = train(ds.x, y, ds.dim, cfg);
    });
    return out;
}

NodeId ecoc_predict(const std::vector<WeightVector>& models, const CodeBook& book,
                    const SparseVector& x) {
    const int B = book.bit_count();
    if (static_cast<int>(models.size()) != B)
        throw data_error("model count " + std::to_string(models.size()) +
                         " does not match codeword length " + std::to_string(B));

    std::vector<uint8_t> pred(B);
    for (int b = 0; b < B; ++b) pred[b] = score(models[b], x) >= 0.0 ? 1 : 0;

    NodeId best = book.class_ids.front();
    int best_dist = B + 1;
    for (size_t c = 0; c < book.class_ids.size(); ++c) {
        int dist = 0;
        for (int b = 0; b < B; ++b) dist += pred[b] != book.bits[c][b];
        if (dist < best_dist) {  // strict: ties keep the lowest class id
            best_dist = dist;
            best = book.class_ids[c];
        }
    }
    return best;
}

EcocModel ecoc_train_selected(const Dataset& train_ds, const Dataset& valid, const CodeBook& book,
                              const HierTrainOptions& opts) {
    if (opts.c_grid.empty()) throw data_error("C grid is empty");
    for (NodeId y : train_ds.y) book.codeword(y);
    if (valid.size() > 0)
        for (NodeId y : valid.y) book.codeword(y);

    std::vector<double> grid = opts.c_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    EcocModel em;
    em.book = book;
    em.dim = std::max(train_ds.dim, valid.dim);
    const int B = book.bit_count();
    em.bit_models.resize(B);

    std::vector<SparseVector> union_x;
    std::vector<NodeId> union_y;
    if (opts.refit_on_union && valid.size() > 0) {
        union_x.insert(union_x.end(), train_ds.x.begin(), train_ds.x.end());
        union_x.insert(union_x.end(), valid.x.begin(), valid.x.end());
        union_y.insert(union_y.end(), train_ds.y.begin(), train_ds.y.end());
        union_y.insert(union_y.end(), valid.y.begin(), valid.y.end());
    }

    parallel_for(static_cast<size_t>(B), opts.jobs, [&](size_t b) {
        std::vector<int> ytr = bit_labels(train_ds, book, static_cast<int>(b));
        std::vector<int> yva;
        if (valid.size() > 0) yva = bit_labels(valid, book, static_cast<int>(b));

        TrainConfig cfg;
        cfg.grad_tol = opts.grad_tol;
        cfg.max_iter = opts.max_iter;

        double best_c = grid.front();
        double best_f1 = -1.0;
        TrainResult best_fit;
        if (grid.size() == 1 || yva.empty()) {
            cfg.C = best_c;
            best_fit = train(train_ds.x, ytr, em.dim, cfg);
        } else {
            WeightVector warm;
            for (double c : grid) {
                cfg.C = c;
                TrainResult fit =
                    train(train_ds.x, ytr, em.dim, cfg, warm.empty() ? nullptr : &warm);
                warm = fit.w;
                double f1 = binary_f1(fit.w, valid.x, yva);
                if (f1 > best_f1) {
                    best_f1 = f1;
                    best_c = c;
                    best_fit = std::move(fit);
                }
            }
        }

        NodeModel nm;
        nm.node = static_cast<NodeId>(b);
        nm.C_used = best_c;
        if (!union_x.empty()) {
            cfg.C = best_c;
            std::vector<int> yun;
            yun.reserve(union_y.size());
            for (NodeId cls : union_y) yun.push_back(book.codeword(cls)[b] ? 1 : -1);
            TrainResult refit = train(union_x, yun, em.dim, cfg, &best_fit.w);
            nm.weights = std::move(refit.w);
            nm.degenerate = refit.degenerate;
        } else {
            nm.weights = std::move(best_fit.w);
            nm.degenerate = best_fit.degenerate;
        }
        em.bit_models[b] = std::move(nm);
    });
    return em;
}

}  // namespace hicl
