#include "paley/sdp.hpp"

#include "paley/pair_index.hpp"

#include <cmath>
#include <fstream>
#include <map>

namespace paley {

SdpProblem build_sos2(const Eigen::MatrixXi& adjacency) {
    int64_t n = adjacency.rows();
    SdpProblem prob;
    prob.dim = 1 + n;
    prob.name = "sos2";
    prob.objective = MatrixXd::Zero(prob.dim, prob.dim);
    for (int64_t i = 0; i < n; ++i) prob.objective(1 + i, 1 + i) = 1.0;
    prob.pinned.push_back({{0, 0}, 1.0});
    for (int64_t i = 0; i < n; ++i)
        prob.classes.push_back({{0, (int)(1 + i)}, {(int)(1 + i), (int)(1 + i)}});
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = i + 1; j < n; ++j)
            if (!adjacency(i, j)) prob.zeros.push_back({(int)(1 + i), (int)(1 + j)});
    return prob;
}

SdpProblem build_sos2(const PaleyGraph& g) { return build_sos2(g.adjacency_matrix()); }

SdpProblem build_sos2_trace_form(const Eigen::MatrixXi& adjacency) {
    int64_t n = adjacency.rows();
    SdpProblem prob;
    prob.dim = n;
    prob.name = "sos2-trace";
    prob.objective = MatrixXd::Ones(n, n);
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = i + 1; j < n; ++j)
            if (!adjacency(i, j)) prob.zeros.push_back({(int)i, (int)j});
    SdpProblem::SumConstraint trace;
    for (int64_t i = 0; i < n; ++i) trace.entries.push_back({(int)i, (int)i});
    trace.total = 1.0;
    prob.sums.push_back(std::move(trace));
    return prob;
}

SdpProblem build_sos2_trace_form(const PaleyGraph& g) {
    return build_sos2_trace_form(g.adjacency_matrix());
}

double sos2_value(const PaleyGraph& g, double tol, Deadline deadline) {
    SdpOptions o;
    o.tol = std::min(tol, 1e-7);
    o.max_iter = 100000;
    o.rho = 1.0;
    o.deadline = deadline;
    return solve(build_sos2_trace_form(g), o).value;
}

namespace {

// Shared builder for SOS4 and FK4; `by_size` collapses union-set classes
// into union-size classes.
SdpProblem build_degree4(const PaleyGraph& g, bool by_size) {
    int64_t p = g.p();
    if (p > 61 && !by_size)
        throw std::invalid_argument("dense degree-4 SOS limited to p <= 61");
    CliqueBasis basis(g);
    int64_t ne = (int64_t)basis.edges.size();
    PairIndexing idx(p);

    SdpProblem prob;
    prob.dim = basis.dim();
    prob.name = by_size ? "fk4" : "sos4";
    prob.objective = MatrixXd::Zero(prob.dim, prob.dim);
    for (int64_t i = 0; i < p; ++i) prob.objective(1 + i, 1 + i) = 1.0;
    prob.pinned.push_back({{0, 0}, 1.0});

    auto vrow = [&](int64_t i) { return (int)(1 + i); };
    auto erow = [&](int64_t e) { return (int)(1 + p + e); };

    // Classes keyed by the union set (encoded) or by union size.
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> by_union;
    std::vector<std::vector<std::pair<int, int>>> size_class(5);
    auto add = [&](std::vector<int> key, int r, int c) {
        std::sort(key.begin(), key.end());
        if (by_size)
            size_class[key.size()].push_back({r, c});
        else
            by_union[key].push_back({r, c});
    };

    for (int64_t i = 0; i < p; ++i) {
        add({(int)i}, 0, vrow(i));
        add({(int)i}, vrow(i), vrow(i));
    }
    for (int64_t i = 0; i < p; ++i)
        for (int64_t j = i + 1; j < p; ++j)
            if (!g.adjacent(i, j)) prob.zeros.push_back({vrow(i), vrow(j)});
    for (int64_t e = 0; e < ne; ++e) {
        auto [a, b] = basis.edges[e];
        add({a, b}, 0, erow(e));
        add({a, b}, vrow(a), vrow(b));
        add({a, b}, erow(e), erow(e));
        add({a, b}, vrow(a), erow(e));
        add({a, b}, vrow(b), erow(e));
        for (int64_t i = 0; i < p; ++i) {
            if (i == a || i == b) continue;
            if (g.adjacent(i, a) && g.adjacent(i, b))
                add({(int)i, a, b}, vrow(i), erow(e));
            else
                prob.zeros.push_back({vrow(i), erow(e)});
        }
        for (int64_t f = e + 1; f < ne; ++f) {
            auto [c, d] = basis.edges[f];
            int inter = (int)(a == c) + (int)(a == d) + (int)(b == c) + (int)(b == d);
            if (inter == 1) {
                int ro = (a == c || a == d) ? b : a;
                int co = (c == a || c == b) ? d : c;
                if (g.adjacent(ro, co)) {
                    int sh = (a == c || a == d) ? a : b;
                    add({sh, ro, co}, erow(e), erow(f));
                } else {
                    prob.zeros.push_back({erow(e), erow(f)});
                }
            } else {
                bool k4 = g.adjacent(a, c) && g.adjacent(a, d) && g.adjacent(b, c) &&
                          g.adjacent(b, d);
                if (k4)
                    add({a, b, c, d}, erow(e), erow(f));
                else
                    prob.zeros.push_back({erow(e), erow(f)});
            }
        }
    }

    if (by_size) {
        for (int s = 1; s <= 4; ++s)
            if (!size_class[s].empty()) prob.classes.push_back(std::move(size_class[s]));
    } else {
        for (auto& [key, members] : by_union) prob.classes.push_back(std::move(members));
    }
    return prob;
}

}  // namespace

SdpProblem build_sos4(const PaleyGraph& g) { return build_degree4(g, false); }
SdpProblem build_fk4(const PaleyGraph& g) { return build_degree4(g, true); }

namespace {

void project_affine(const SdpProblem& prob, MatrixXd& x) {
    x = 0.5 * (x + x.transpose()).eval();
    for (const auto& cls : prob.classes) {
        double acc = 0;
        for (auto [i, j] : cls) acc += x(i, j);
        double avg = acc / (double)cls.size();
        for (auto [i, j] : cls) x(i, j) = x(j, i) = avg;
    }
    for (auto [i, j] : prob.zeros) x(i, j) = x(j, i) = 0.0;
    for (const auto& sc : prob.sums) {
        // Frobenius projection onto sum(entries) = total, each listed entry
        // counted once; off-diagonal members cost double through their
        // mirrored copies, so they absorb half the per-entry shift.
        double acc = 0, denom = 0;
        for (auto [i, j] : sc.entries) {
            acc += x(i, j);
            denom += (i == j) ? 1.0 : 0.5;
        }
        double delta = sc.total - acc;
        for (auto [i, j] : sc.entries) {
            double dv = delta * ((i == j) ? 1.0 : 0.5) / denom;
            x(i, j) += dv;
            if (i != j) x(j, i) += dv;
        }
    }
    for (auto& [pos, val] : prob.pinned) x(pos.first, pos.second) = x(pos.second, pos.first) = val;
}

}  // namespace

namespace {

// PSD projection that reuses the previous iteration's negative count to pick
// between a full decomposition and peeling a few negative eigenpairs.
MatrixXd psd_project_hinted(const MatrixXd& a, int& neg_hint) {
    int n = (int)a.rows();
    VectorXd evals;
    MatrixXd evecs;
    if (n > 128 && neg_hint >= 0 && neg_hint < n / 5) {
        int m = sym_eigenpairs_below(a, 0.0, evals, evecs);
        neg_hint = m;
        if (m == 0) return a;
        if (m < n / 5) {
            MatrixXd out = a;
            for (int i = 0; i < m; ++i)
                out.noalias() -= evals(i) * (evecs.col(i) * evecs.col(i).transpose());
            return out;
        }
    }
    sym_eigendecomposition(a, evals, evecs);
    int m = 0;
    while (m < n && evals(m) < 0.0) ++m;
    neg_hint = m;
    return evecs * evals.cwiseMax(0.0).asDiagonal() * evecs.transpose();
}

}  // namespace

SdpSolution solve(const SdpProblem& prob, const SdpOptions& opts) {
    const int64_t n = prob.dim;
    double rho = opts.rho;
    MatrixXd x = opts.x0 ? *opts.x0 : MatrixXd::Identity(n, n);
    project_affine(prob, x);
    int neg_hint = -1;
    MatrixXd z = psd_project_hinted(x, neg_hint);
    MatrixXd u = MatrixXd::Zero(n, n);

    std::ofstream trace;
    if (!opts.trace_path.empty()) {
        trace.open(opts.trace_path);
        trace << "iteration,primal_residual,dual_residual,gap,objective\n";
    }

    SdpSolution sol;
    for (int it = 1; it <= opts.max_iter; ++it) {
        x = z - u + prob.objective / rho;
        project_affine(prob, x);
        MatrixXd xr = opts.over_relax * x + (1.0 - opts.over_relax) * z;
        MatrixXd zprev = std::move(z);
        z = psd_project_hinted(xr + u, neg_hint);
        u += xr - z;

        double xn = std::max({1.0, x.norm(), z.norm()});
        double r = (x - z).norm() / xn;
        double s = rho * (z - zprev).norm() / xn;
        double cx = (prob.objective.array() * x.array()).sum();
        double cz = (prob.objective.array() * z.array()).sum();
        double gap = std::abs(cx - cz) / (1.0 + std::abs(cx));
        sol.primal_residual = r;
        sol.dual_residual = s;
        sol.gap = gap;
        sol.iterations = it;

        if (trace.is_open() && (it % 25 == 0 || it == 1))
            trace << it << "," << r << "," << s << "," << gap << "," << cx << "\n";

        if (std::max({r, s, gap}) < opts.tol) {
            sol.status = SdpStatus::Optimal;
            break;
        }
        if (past(opts.deadline)) {
            sol.status = SdpStatus::Capped;
            break;
        }
        if (opts.adapt && it % 50 == 0) {
            if (r > 10.0 * s && rho < 1e3) {
                rho *= 2.0;
                u /= 2.0;
            } else if (s > 10.0 * r && rho > 1e-3) {
                rho /= 2.0;
                u *= 2.0;
            }
        }
    }
    sol.value = (prob.objective.array() * x.array()).sum();
    sol.x = std::move(z);
    return sol;
}

}  // namespace paley
