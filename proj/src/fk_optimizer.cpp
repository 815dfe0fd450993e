#include "paley/fk_optimizer.hpp"

#include "paley/pair_index.hpp"
#include "paley/simplex.hpp"

#include <cmath>

namespace paley {

FkOracle::FkOracle(const PaleyGraph& g) : g_(g), p_(g.p()) {
    PairIndexing idx(p_);
    edge_of_pair_.assign(idx.size(), -1);
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [a, b] = idx.pairs[r];
        if (g.adjacent(a, b)) {
            edge_of_pair_[r] = (int64_t)edges_.size();
            edges_.emplace_back(a, b);
        }
    }
    dim_ = 1 + p_ + (int64_t)edges_.size();
    adj_ = g.adjacency_matrix().cast<double>();
}

void FkOracle::matvec(const FkParams& al, const VectorXd& x, VectorXd& y) const {
    const int64_t p = p_;
    const int64_t ne = (int64_t)edges_.size();
    y.setZero(dim_);

    const double x0 = x(0);
    const auto x1 = x.segment(1, p);
    const auto x2 = x.segment(1 + p, ne);

    // Edge part as a symmetric p x p matrix.
    MatrixXd v = MatrixXd::Zero(p, p);
    for (int64_t e = 0; e < ne; ++e) {
        auto [a, b] = edges_[e];
        v(a, b) = v(b, a) = x2(e);
    }
    VectorXd vrow = v.rowwise().sum();
    VectorXd ax1 = adj_ * x1;
    // triangles through each vertex: diag(A V A) / 2
    VectorXd tri_vertex = (adj_ * v * adj_).diagonal();

    y(0) = x0 + al.a1 * x1.sum() + al.a2 * x2.sum();
    for (int64_t i = 0; i < p; ++i) {
        y(1 + i) = al.a1 * x0 + al.a1 * x1(i) + al.a2 * ax1(i) + al.a2 * vrow(i) +
                   al.a3 * 0.5 * tri_vertex(i);
    }
    VectorXd n(p), w(p);
    for (int64_t e = 0; e < ne; ++e) {
        auto [a, b] = edges_[e];
        for (int64_t c = 0; c < p; ++c) n(c) = adj_(a, c) * adj_(b, c);
        w.noalias() = v * n;
        double ndotx1 = 0;
        for (int64_t c = 0; c < p; ++c) ndotx1 += n(c) * x1(c);
        y(1 + p + e) = al.a2 * x0 + al.a2 * (x1(a) + x1(b)) + al.a3 * ndotx1 +
                       al.a2 * x2(e) + al.a3 * (w(a) + w(b)) + 0.5 * al.a4 * n.dot(w);
    }
}

FkOracle::Report FkOracle::min_eig(const FkParams& al, int want_vectors) const {
    Report rep;
    VectorXd ones = VectorXd::Ones(dim_), rowsums;
    matvec(al, ones, rowsums);
    rep.gershgorin = std::max(1.0, rowsums.maxCoeff());

    if (dim_ <= 2500) {
        PseudomomentMatrix m = assemble_M(g_, al);
        VectorXd evals;
        MatrixXd evecs;
        sym_smallest_eigenpairs(m.data, want_vectors, evals, evecs);
        rep.min_eig = evals(0);
        rep.vectors = evecs;
        return rep;
    }

    double shift = rep.gershgorin;
    auto mv = [&](const VectorXd& xx, VectorXd& yy) {
        matvec(al, xx, yy);
        yy = yy - shift * xx;  // spectrum shifted below zero; bottom unchanged
    };
    auto res = lanczos_smallest(mv, (int)dim_, want_vectors, 1e-9, 420, default_seed());
    rep.min_eig = res.ritz_values(0) + shift;
    rep.vectors = res.ritz_vectors;
    rep.converged = res.converged;
    return rep;
}

void FkOracle::quad_form_coeffs(const VectorXd& v, double& g0, Eigen::Vector4d& g) const {
    VectorXd y;
    FkParams zero{};
    matvec(zero, v, y);
    g0 = v.dot(y);
    const FkParams units[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int k = 0; k < 4; ++k) {
        matvec(units[k], v, y);
        g(k) = v.dot(y) - g0;
    }
}

namespace {

struct CutSet {
    // a . alpha <= b rows, alpha >= 0 implicit in the LP solver
    std::vector<Eigen::Vector4d> rows;
    std::vector<double> rhs;

    void add(const Eigen::Vector4d& a, double b) {
        double scale = std::max({std::abs(a(0)), std::abs(a(1)), std::abs(a(2)),
                                 std::abs(a(3)), std::abs(b), 1e-12});
        rows.push_back(a / scale);
        rhs.push_back(b / scale);
    }

    Eigen::MatrixXd matrix(int extra_cols) const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero((int)rows.size(), 4 + extra_cols);
        for (int i = 0; i < (int)rows.size(); ++i) m.row(i).head(4) = rows[i];
        return m;
    }
};

}  // namespace

FkResult fk4_value(const PaleyGraph& g, const FkOptions& opts) {
    FkOracle oracle(g);
    const double p = (double)g.p();
    FkResult res;

    CutSet cuts;
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector4d e = Eigen::Vector4d::Zero();
        e(k) = 1.0;
        cuts.add(e, 1.0);  // alpha_k <= 1
    }

    double lo = 0.0;  // alpha = 0 is feasible with objective 0
    res.best_alpha = FkParams{};
    auto try_point = [&](const FkParams& al) -> bool {
        auto rep = oracle.min_eig(al, 6);
        ++res.oracle_calls;
        bool feasible = rep.min_eig >= -1e-8 * rep.gershgorin;
        if (feasible && p * al.a1 > lo) {
            lo = p * al.a1;
            res.best_alpha = al;
        }
        if (!feasible) {
            for (int c = 0; c < rep.vectors.cols(); ++c) {
                double g0;
                Eigen::Vector4d gr;
                oracle.quad_form_coeffs(rep.vectors.col(c), g0, gr);
                double val = g0 + gr(0) * al.a1 + gr(1) * al.a2 + gr(2) * al.a3 + gr(3) * al.a4;
                if (val < -1e-12) cuts.add(-gr, g0);
            }
        }
        return feasible;
    };

    // Seed with the warm start and the closed-form construction point.
    if (opts.warm_start) try_point(*opts.warm_start);
    try_point(theorem_alphas(0.05, g.p()));

    auto upper_bound = [&]() -> double {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
        c(0) = p;
        Eigen::MatrixXd a = cuts.matrix(0);
        Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(cuts.rhs.data(), cuts.rhs.size());
        LpResult lp = lp_maximize(c, a, b);
        if (lp.status != LpStatus::Optimal) return lo;  // region empty: bracket collapses
        return lp.value;
    };

    double hi = upper_bound();
    while (hi - lo > opts.tol) {
        if (res.oracle_calls >= opts.max_oracle_calls || past(opts.deadline)) {
            res.capped = true;
            break;
        }
        double mid = 0.5 * (lo + hi);
        // Chebyshev center of the cut polytope intersected with {p a1 >= mid}:
        // variables (alpha, r), maximize r.
        int m = (int)cuts.rows.size() + 1;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, 5);
        Eigen::VectorXd b(m);
        for (int i = 0; i < m - 1; ++i) {
            a.row(i).head(4) = cuts.rows[i];
            a(i, 4) = cuts.rows[i].norm();
            b(i) = cuts.rhs[i];
        }
        a(m - 1, 0) = -p;
        a(m - 1, 4) = p;  // level-set margin also shrinks with r
        b(m - 1) = -mid;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(5);
        c(4) = 1.0;
        LpResult lp = lp_maximize(c, a, b);
        if (lp.status != LpStatus::Optimal || lp.value < 1e-11) {
            hi = mid;  // the localization set above this level is (numerically) empty
            continue;
        }
        FkParams al{lp.x(0), lp.x(1), lp.x(2), lp.x(3)};
        try_point(al);
        hi = std::min(hi, upper_bound());
        hi = std::max(hi, lo);
    }

    res.lower = lo;
    res.upper = hi;
    res.value = 0.5 * (lo + hi);
    res.converged = (hi - lo) <= opts.tol;
    return res;
}

}  // namespace paley
