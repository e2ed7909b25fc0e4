#include "hicl/linreg.hpp"

#include <algorithm>
#include <string>

#include "hicl/error.hpp"

namespace hicl {

namespace {

void check_inputs(const std::vector<SparseVector>& X, const std::vector<int>& y, double C) {
    if (X.size() != y.size())
        throw data_error("dimension mismatch: " + std::to_string(X.size()) + " examples vs " +
                         std::to_string(y.size()) + " labels");
    if (X.empty()) throw data_error("empty training set");
    if (!(C > 0.0)) throw data_error("C must be positive, got " + std::to_string(C));
    for (int yi : y)
        if (yi != 1 && yi != -1)
            throw data_error("labels must be +1/-1, got " + std::to_string(yi));
}

double norm2(const WeightVector& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

double vdot(const WeightVector& a, const WeightVector& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double objective_from_scores(const std::vector<double>& s, const std::vector<int>& y, double C,
                             double w_sqnorm) {
    double loss = 0.0;
    for (size_t i = 0; i < s.size(); ++i) loss += log1p_exp(-y[i] * s[i]);
    return C * loss + 0.5 * w_sqnorm;
}

// Conjugate gradients on (I + C X^T D X) p = -g, stopping at 0.1 ||g||.
WeightVector cg_newton_direction(const std::vector<SparseVector>& X, const std::vector<double>& d,
                                 double C, const WeightVector& g) {
    const size_t dim = g.size();
    WeightVector p(dim, 0.0), r(dim), dir(dim), hd(dim);
    for (size_t i = 0; i < dim; ++i) r[i] = -g[i];
    dir = r;
    double rr = vdot(r, r);
    const double target = 0.1 * norm2(g);
    const int max_cg = std::max<int>(30, std::min<int>(static_cast<int>(dim), 250));

    std::vector<double> xd(X.size());
    for (int k = 0; k < max_cg; ++k) {
        if (std::sqrt(rr) <= target) break;
        // hd = dir + C * sum_i d_i (dir . x_i) x_i
        hd.assign(dim, 0.0);
        for (size_t i = 0; i < X.size(); ++i) xd[i] = dot(dir, X[i]);
        for (size_t i = 0; i < X.size(); ++i)
            if (d[i] != 0.0) axpy(C * d[i] * xd[i], X[i], hd);
        for (size_t i = 0; i < dim; ++i) hd[i] += dir[i];

        double dhd = vdot(dir, hd);
        if (dhd <= 0.0) break;  // cannot happen for SPD Hessian; guard against roundoff
        double alpha = rr / dhd;
        for (size_t i = 0; i < dim; ++i) {
            p[i] += alpha * dir[i];
            r[i] -= alpha * hd[i];
        }
        double rr_new = vdot(r, r);
        double beta = rr_new / rr;
        for (size_t i = 0; i < dim; ++i) dir[i] = r[i] + beta * dir[i];
        rr = rr_new;
    }
    return p;
}

}  // namespace

double objective(const WeightVector& w, const std::vector<SparseVector>& X,
                 const std::vector<int>& y, double C) {
    check_inputs(X, y, C);
    double loss = 0.0;
    for (size_t i = 0; i < X.size(); ++i) loss += log1p_exp(-y[i] * dot(w, X[i]));
    double reg = 0.0;
    for (double a : w) reg += a * a;
    return C * loss + 0.5 * reg;
}

WeightVector gradient(const WeightVector& w, const std::vector<SparseVector>& X,
                      const std::vector<int>& y, double C) {
    check_inputs(X, y, C);
    WeightVector g = w;
    for (size_t i = 0; i < X.size(); ++i) {
        double coef = -C * y[i] * sigmoid(-y[i] * dot(w, X[i]));
        axpy(coef, X[i], g);
    }
    return g;
}

TrainResult train(const std::vector<SparseVector>& X, const std::vector<int>& y, int dim,
                  const TrainConfig& cfg, const WeightVector* warm_start) {
    check_inputs(X, y, cfg.C);
    if (dim < 1) throw data_error("dimension must be positive");

    TrainResult res;
    bool has_pos = false, has_neg = false;
    for (int yi : y) (yi > 0 ? has_pos : has_neg) = true;
    if (X.size() >= 2 && (!has_pos || !has_neg)) {
        // Uniform labels over several examples carry no binary signal:
        // return the zero model flagged untrainable so prediction falls
        // through to siblings. A lone example is still optimized normally.
        res.w.assign(dim, 0.0);
        res.degenerate = true;
        res.converged = true;
        res.objective_trace.push_back(objective(res.w, X, y, cfg.C));
        return res;
    }

    WeightVector w = (warm_start && warm_start->size() == static_cast<size_t>(dim))
                         ? *warm_start
                         : WeightVector(dim, 0.0);

    std::vector<double> s(X.size());
    for (size_t i = 0; i < X.size(); ++i) s[i] = dot(w, X[i]);
    double w_sqnorm = vdot(w, w);
    double f = objective_from_scores(s, y, cfg.C, w_sqnorm);
    res.objective_trace.push_back(f);

    // Gradient at zero weights fixes the relative stopping scale.
    WeightVector g0(dim, 0.0);
    for (size_t i = 0; i < X.size(); ++i) axpy(-cfg.C * y[i] * 0.5, X[i], g0);
    const double stop = cfg.grad_tol * std::max(1.0, norm2(g0));

    WeightVector g(dim), p;
    std::vector<double> d(X.size()), px(X.size());
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        g = w;
        for (size_t i = 0; i < X.size(); ++i) {
            double sig = sigmoid(-y[i] * s[i]);
            axpy(-cfg.C * y[i] * sig, X[i], g);
            d[i] = sig * (1.0 - sig);
        }
        if (norm2(g) <= stop) {
            res.converged = true;
            break;
        }
        res.iterations = iter;

        p = cg_newton_direction(X, d, cfg.C, g);
        double gtp = vdot(g, p);
        if (!(gtp < 0.0)) break;  // no descent direction left at this precision

        for (size_t i = 0; i < X.size(); ++i) px[i] = dot(p, X[i]);
        const double wp = vdot(w, p);
        const double pp = vdot(p, p);

        // Armijo backtracking: f(w + t p) <= f(w) + 1e-4 t <g, p>
        double t = 1.0, f_new = f;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            double sq = w_sqnorm + 2.0 * t * wp + t * t * pp;
            double loss = 0.0;
            for (size_t i = 0; i < X.size(); ++i) loss += log1p_exp(-y[i] * (s[i] + t * px[i]));
            f_new = cfg.C * loss + 0.5 * sq;
            if (f_new <= f + 1e-4 * t * gtp) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;

        for (size_t i = 0; i < w.size(); ++i) w[i] += t * p[i];
        for (size_t i = 0; i < X.size(); ++i) s[i] += t * px[i];
        w_sqnorm = vdot(w, w);
        f = f_new;
        res.objective_trace.push_back(f);
        if (!std::isfinite(f)) throw numeric_error("objective became non-finite during training");
    }

    res.w = std::move(w);
    if (!res.converged) {
        // max_iter or stalled line search; caller still gets the best iterate
        for (double a : res.w)
            if (!std::isfinite(a)) throw numeric_error("weights became non-finite during training");
    }
    return res;
}

}  // namespace hicl
