#include "paley/paley_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace paley {

PaleyGraph::PaleyGraph(PrimeContext ctx) : ctx_(std::move(ctx)) {
    if (!ctx_.is_one_mod_four())
        throw std::invalid_argument("Paley graph needs p = 1 (mod 4); edge set ill-defined otherwise");
}

PaleyGraph build_paley(PrimeContext ctx) { return PaleyGraph(std::move(ctx)); }

Eigen::MatrixXi PaleyGraph::adjacency_matrix() const {
    int64_t p = ctx_.p();
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(p, p);
    for (int64_t i = 0; i < p; ++i)
        for (int64_t j = 0; j < p; ++j)
            if (i != j && adjacent(i, j)) a(i, j) = 1;
    return a;
}

Eigen::MatrixXi PaleyGraph::seidel_matrix() const {
    int64_t p = ctx_.p();
    Eigen::MatrixXi s(p, p);
    for (int64_t i = 0; i < p; ++i)
        for (int64_t j = 0; j < p; ++j) s(i, j) = seidel(i, j);
    return s;
}

MatrixXd PaleyGraph::seidel_matrix_d() const {
    return seidel_matrix().cast<double>();
}

StrongRegularity strong_regularity(const PaleyGraph& g) {
    int64_t p = g.p();
    StrongRegularity out;
    out.lambda = (p - 5) / 4;
    out.mu = (p - 1) / 4;
    out.holds = true;
    for (int64_t a = 0; a < p && out.holds; ++a) {
        for (int64_t b = a + 1; b < p; ++b) {
            int64_t common = 0;
            for (int64_t c = 0; c < p; ++c)
                if (c != a && c != b && g.adjacent(a, c) && g.adjacent(b, c)) ++common;
            int64_t expect = g.adjacent(a, b) ? out.lambda : out.mu;
            if (common != expect) { out.holds = false; break; }
        }
    }
    return out;
}

Spectra spectra(const PaleyGraph& g) {
    Spectra out;
    out.adjacency_eigs = sym_eigenvalues(g.adjacency_matrix().cast<double>());
    out.seidel_eigs = sym_eigenvalues(g.seidel_matrix_d());
    return out;
}

namespace {

constexpr int kWordBits = 64;

struct BitGraph {
    int n = 0;
    int words = 0;
    std::vector<uint64_t> rows;  // row-major bitsets

    bool get(int i, int j) const {
        return rows[(size_t)i * words + j / kWordBits] >> (j % kWordBits) & 1;
    }
    void set(int i, int j) {
        rows[(size_t)i * words + j / kWordBits] |= uint64_t(1) << (j % kWordBits);
    }
};

struct CliqueSolver {
    const BitGraph& g;
    int best = 0;
    std::vector<uint64_t> scratch;

    explicit CliqueSolver(const BitGraph& graph) : g(graph) {}

    // Greedy coloring of the candidate set; vertices come back ordered with
    // nondecreasing color, so the color is a per-vertex bound.
    void color_sort(const std::vector<int>& cand, std::vector<int>& order,
                    std::vector<int>& bound) {
        order.clear();
        bound.clear();
        std::vector<std::vector<int>> classes;
        for (int v : cand) {
            bool placed = false;
            for (auto& cls : classes) {
                bool conflict = false;
                for (int u : cls)
                    if (g.get(u, v)) { conflict = true; break; }
                if (!conflict) { cls.push_back(v); placed = true; break; }
            }
            if (!placed) classes.push_back({v});
        }
        for (size_t c = 0; c < classes.size(); ++c)
            for (int v : classes[c]) {
                order.push_back(v);
                bound.push_back((int)c + 1);
            }
    }

    void expand(std::vector<int>& cand, int depth) {
        std::vector<int> order, bound;
        color_sort(cand, order, bound);
        for (int i = (int)order.size() - 1; i >= 0; --i) {
            if (depth + bound[i] <= best) return;
            int v = order[i];
            std::vector<int> next;
            for (int j = 0; j < i; ++j)
                if (g.get(order[j], v)) next.push_back(order[j]);
            if (depth + 1 > best) best = depth + 1;
            if (!next.empty()) expand(next, depth + 1);
        }
    }
};

}  // namespace

int clique_number_adj(const std::vector<std::vector<bool>>& adj) {
    int n = (int)adj.size();
    BitGraph g;
    g.n = n;
    g.words = (n + kWordBits - 1) / kWordBits;
    g.rows.assign((size_t)n * g.words, 0);

    // Descending degree, then index; for regular graphs this is the
    // identity, but the solver also accepts arbitrary test graphs.
    std::vector<int> deg(n, 0), perm(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (adj[i][j]) ++deg[i];
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (adj[perm[i]][perm[j]]) g.set(i, j);

    CliqueSolver solver(g);
    std::vector<int> cand(n);
    std::iota(cand.begin(), cand.end(), 0);
    solver.expand(cand, 0);
    return solver.best;
}

int clique_number(const PaleyGraph& g) {
    int64_t p = g.p();
    if (p > 1000) throw std::invalid_argument("exact clique search limited to p <= 1000");
    std::vector<std::vector<bool>> adj(p, std::vector<bool>(p, false));
    for (int64_t a = 0; a < p; ++a)
        for (int64_t b = 0; b < p; ++b)
            if (a != b && g.adjacent(a, b)) adj[a][b] = true;
    return clique_number_adj(adj);
}

ClassicalBounds classical_bounds(int64_t p) {
    ClassicalBounds out;
    out.hoffman = std::sqrt((double)p);
    out.hansen_podolskii = std::sqrt((double)(2 * p - 1)) / 2.0 + 1.0;
    return out;
}

}  // namespace paley
