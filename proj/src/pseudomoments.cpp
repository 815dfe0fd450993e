#include "paley/pseudomoments.hpp"

#include "paley/character_sums.hpp"
#include "paley/graph_matrices.hpp"
#include "paley/pair_index.hpp"

#include <cmath>
#include <sstream>

namespace paley {

FkParams theorem_alphas(double c, int64_t p) {
    if (c <= 0) throw std::invalid_argument("c must be positive");
    FkParams a;
    a.a1 = c * std::pow((double)p, -2.0 / 3.0);
    a.a2 = 4.0 * a.a1 * a.a1;
    a.a3 = 8.0 * a.a1 * a.a1 * a.a1;
    a.a4 = 512.0 * a.a1 * a.a1 * a.a1 * a.a1;
    return a;
}

CliqueBasis::CliqueBasis(const PaleyGraph& g) : p(g.p()) {
    PairIndexing idx(p);
    edge_index_of_pair.assign(idx.size(), -1);
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [a, b] = idx.pairs[r];
        if (g.adjacent(a, b)) {
            edge_index_of_pair[r] = (int64_t)edges.size();
            edges.emplace_back(a, b);
        }
    }
}

PseudomomentMatrix assemble_M(const PaleyGraph& g, const FkParams& al) {
    CliqueBasis basis(g);
    int64_t p = g.p();
    int64_t ne = (int64_t)basis.edges.size();
    int64_t dim = basis.dim();
    PseudomomentMatrix out;
    out.p = p;
    out.dim = dim;
    out.n_edges = ne;
    MatrixXd& m = out.data;
    m = MatrixXd::Zero(dim, dim);

    auto vrow = [&](int64_t i) { return 1 + i; };
    auto erow = [&](int64_t e) { return 1 + p + e; };

    m(0, 0) = 1.0;
    for (int64_t i = 0; i < p; ++i) {
        m(0, vrow(i)) = m(vrow(i), 0) = al.a1;
        m(vrow(i), vrow(i)) = al.a1;
    }
    for (int64_t i = 0; i < p; ++i)
        for (int64_t j = i + 1; j < p; ++j)
            if (g.adjacent(i, j)) m(vrow(i), vrow(j)) = m(vrow(j), vrow(i)) = al.a2;
    for (int64_t e = 0; e < ne; ++e) {
        auto [a, b] = basis.edges[e];
        m(0, erow(e)) = m(erow(e), 0) = al.a2;
        m(erow(e), erow(e)) = al.a2;
        for (int64_t i = 0; i < p; ++i) {
            double v = 0.0;
            if (i == a || i == b)
                v = al.a2;
            else if (g.adjacent(i, a) && g.adjacent(i, b))
                v = al.a3;
            if (v != 0.0) m(vrow(i), erow(e)) = m(erow(e), vrow(i)) = v;
        }
        for (int64_t f = e + 1; f < ne; ++f) {
            auto [c, d] = basis.edges[f];
            int inter = (int)(a == c) + (int)(a == d) + (int)(b == c) + (int)(b == d);
            double v = 0.0;
            if (inter == 1) {
                // union is a triangle iff the two non-shared endpoints are adjacent
                int ro = (a == c || a == d) ? b : a;
                int co = (c == a || c == b) ? d : c;
                if (g.adjacent(ro, co)) v = al.a3;
            } else if (inter == 0) {
                bool k4 = g.adjacent(a, c) && g.adjacent(a, d) && g.adjacent(b, c) &&
                          g.adjacent(b, d);
                if (k4) v = al.a4;
            }
            if (v != 0.0) m(erow(e), erow(f)) = m(erow(f), erow(e)) = v;
        }
    }
    return out;
}

HBlocks assemble_H(const PaleyGraph& g, const FkParams& al) {
    int64_t p = g.p();
    PairIndexing idx(p);
    int64_t n = idx.size();
    HBlocks out;
    out.h11.resize(p, p);
    for (int64_t a = 0; a < p; ++a)
        for (int64_t b = 0; b < p; ++b) {
            if (a == b)
                out.h11(a, b) = al.a1 - al.a1 * al.a1;
            else
                out.h11(a, b) = al.a2 * (g.adjacent(a, b) ? 1.0 : 0.0) - al.a1 * al.a1;
        }
    out.h12.resize(p, n);
    for (int64_t a = 0; a < p; ++a)
        for (int64_t c = 0; c < n; ++c) {
            auto [u, v] = idx.pairs[c];
            if (a == u || a == v)
                out.h12(a, c) = al.a2 - al.a1 * al.a2;
            else
                out.h12(a, c) = al.a3 * ((g.adjacent(a, u) && g.adjacent(a, v)) ? 1.0 : 0.0) -
                                al.a1 * al.a2;
        }
    out.h22.resize(n, n);
    for (int64_t r = 0; r < n; ++r) {
        auto [a, b] = idx.pairs[r];
        for (int64_t c = 0; c < n; ++c) {
            auto [u, v] = idx.pairs[c];
            int inter = (int)(a == u) + (int)(a == v) + (int)(b == u) + (int)(b == v);
            if (inter == 2) {
                out.h22(r, c) = al.a2 - al.a2 * al.a2;
            } else if (inter == 1) {
                int ro = (a == u || a == v) ? b : a;
                int co = (u == a || u == b) ? v : u;
                out.h22(r, c) =
                    al.a3 * (g.adjacent(ro, co) ? 1.0 : 0.0) - al.a2 * al.a2;
            } else {
                bool all = g.adjacent(a, u) && g.adjacent(a, v) && g.adjacent(b, u) &&
                           g.adjacent(b, v);
                out.h22(r, c) = al.a4 * (all ? 1.0 : 0.0) - al.a2 * al.a2;
            }
        }
    }
    return out;
}

double h_vs_n_residual(const PaleyGraph& g, const FkParams& al) {
    PseudomomentMatrix m = assemble_M(g, al);
    int64_t p = g.p();
    int64_t ne = m.n_edges;
    // N = lower-right block of M minus the outer product of the first row.
    MatrixXd n_mat = m.data.bottomRightCorner(p + ne, p + ne) -
                     m.data.col(0).tail(p + ne) * m.data.row(0).tail(p + ne);

    HBlocks h = assemble_H(g, al);
    CliqueBasis basis(g);
    PairIndexing idx(p);
    MatrixXd h_restricted(p + ne, p + ne);
    h_restricted.topLeftCorner(p, p) = h.h11;
    MatrixXd h12e(p, ne);
    for (int64_t e = 0; e < ne; ++e) {
        auto [a, b] = basis.edges[e];
        h12e.col(e) = h.h12.col(idx.index(a, b));
    }
    h_restricted.topRightCorner(p, ne) = h12e;
    h_restricted.bottomLeftCorner(ne, p) = h12e.transpose();
    for (int64_t e = 0; e < ne; ++e)
        for (int64_t f = 0; f < ne; ++f) {
            auto [a, b] = basis.edges[e];
            auto [c, d] = basis.edges[f];
            h_restricted(p + e, p + f) = h.h22(idx.index(a, b), idx.index(c, d));
        }
    return (n_mat - h_restricted).cwiseAbs().maxCoeff();
}

MinEig min_eigenvalue(const MatrixXd& m) {
    MinEig out;
    int64_t n = m.rows();
    if (n <= 2500) {
        VectorXd evals;
        MatrixXd evecs;
        sym_smallest_eigenpairs(m, 1, evals, evecs);
        out.value = evals(0);
        return out;
    }
    // Shifted Lanczos on s I - M turns the smallest eigenvalue into the top.
    double shift = m.cwiseAbs().rowwise().sum().maxCoeff();  // Gershgorin bound
    auto mv = [&](const VectorXd& x, VectorXd& y) { y = shift * x - m * x; };
    auto res = lanczos_smallest(
        [&](const VectorXd& x, VectorXd& y) {
            mv(x, y);
            y = -y;  // lanczos_smallest finds the bottom; feed it -(sI - M)
        },
        (int)n, 1, 1e-10, 600, default_seed());
    out.value = shift + res.ritz_values(0);
    out.converged = res.converged;
    return out;
}

std::vector<ConstructionPoint> verify_main_construction(double c,
                                                        const std::vector<int64_t>& primes,
                                                        double c_grid_max) {
    std::vector<ConstructionPoint> out;
    for (int64_t p : primes) {
        PaleyGraph g = build_paley(p);
        ConstructionPoint pt;
        pt.p = p;
        PseudomomentMatrix m = assemble_M(g, theorem_alphas(c, p));
        pt.min_eig = min_eigenvalue(m.data).value;
        double scale = std::max(1.0, m.data.cwiseAbs().maxCoeff());
        pt.psd = pt.min_eig >= -1e-8 * scale;
        for (int k = 1; 0.01 * k <= c_grid_max + 1e-12; ++k) {
            PseudomomentMatrix mk = assemble_M(g, theorem_alphas(0.01 * k, p));
            double ev = min_eigenvalue(mk.data).value;
            if (ev >= -1e-8 * std::max(1.0, mk.data.cwiseAbs().maxCoeff()))
                pt.largest_feasible_c = 0.01 * k;
            else
                break;
        }
        out.push_back(pt);
    }
    return out;
}

PseudomomentSumReport pseudomoment_sum_checks(const PaleyGraph& g, const FkParams& al) {
    int64_t p = g.p();
    if (!g.adjacent(0, 1)) throw std::logic_error("0 ~ 1 must be an edge (chi(1)=1)");
    PseudomomentSumReport rep;

    // sum_{i not in {0,1}} E[x0 x1 xi] = alpha3 * #triangles through {0,1}
    int64_t tri = 0;
    for (int64_t i = 2; i < p; ++i)
        if (g.adjacent(0, i) && g.adjacent(1, i)) ++tri;
    rep.triangle_sum = (double)tri * al.a3;
    rep.triangle_expected = (double)(p - 5) / 4.0 * al.a3;

    // sum_i E[x0 xi] = a1 + (p-1)/2 a2
    int64_t deg = 0;
    for (int64_t i = 1; i < p; ++i)
        if (g.adjacent(0, i)) ++deg;
    rep.pair_sum = al.a1 + (double)deg * al.a2;
    rep.pair_expected = al.a1 + (double)(p - 1) / 2.0 * al.a2;

    // sum_{i,j} E[x0 xi xj] over ordered (i,j)
    double triple = 0.0;
    for (int64_t i = 0; i < p; ++i)
        for (int64_t j = 0; j < p; ++j) {
            // E[x0 xi xj] = alpha_{|{0,i,j}|} if that set is a clique
            std::vector<int64_t> set = {0, i, j};
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            bool clique = true;
            for (size_t x = 0; x < set.size() && clique; ++x)
                for (size_t y = x + 1; y < set.size(); ++y)
                    if (!g.adjacent(set[x], set[y])) { clique = false; break; }
            if (!clique) continue;
            triple += (set.size() == 1) ? al.a1 : (set.size() == 2 ? al.a2 : al.a3);
        }
    rep.triple_sum = triple;
    rep.triple_expected = al.a1 + 3.0 * (p - 1) / 2.0 * al.a2 +
                          (double)(p - 1) * (p - 5) / 8.0 * al.a3;

    // sum_{i,j not in {0,1}} E[x0 x1 xi xj], exact enumeration
    double quad = 0.0;
    for (int64_t i = 2; i < p; ++i) {
        if (!(g.adjacent(0, i) && g.adjacent(1, i))) continue;
        quad += al.a3;  // i = j diagonal contributes the triangle term
        for (int64_t j = 2; j < p; ++j) {
            if (j == i) continue;
            if (g.adjacent(0, j) && g.adjacent(1, j) && g.adjacent(i, j)) quad += al.a4;
        }
    }
    rep.quad_sum = quad;
    rep.quad_main_term = (double)(p - 2) * (p - 3) / 32.0 * al.a4 +
                         (double)(p - 5) / 4.0 * al.a3;
    double dev = std::abs(rep.quad_sum - rep.quad_main_term);
    rep.quad_deviation_ratio = dev / (std::pow((double)p, 1.5) * al.a4);

    rep.exact_identities_hold = std::abs(rep.triangle_sum - rep.triangle_expected) < 1e-12 &&
                                std::abs(rep.pair_sum - rep.pair_expected) < 1e-12 &&
                                std::abs(rep.triple_sum - rep.triple_expected) <
                                    1e-9 * std::max(1.0, std::abs(rep.triple_expected));
    return rep;
}

VectorXd u_vector(const PaleyGraph& g) {
    int64_t p = g.p();
    PairIndexing idx(p);
    VectorXd u(idx.size());
    const PrimeContext& ctx = g.ctx();
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx.pairs[r];
        u(r) = (double)ctx.legendre((int64_t)i * j) * (double)(ctx.legendre(i - j) + 1);
    }
    return u;
}

UQuadraticReport u_quadratic_forms(const PaleyGraph& g) {
    int64_t p = g.p();
    const PrimeContext& ctx = g.ctx();
    PairIndexing idx(p);
    UQuadraticReport rep;

    VectorXd u = u_vector(g);
    rep.u_norm2 = u.squaredNorm();
    VectorXd low = apply_p0p1(p, u);
    rep.u_low_norm2 = low.squaredNorm();

    // Closed-form projection coefficients: v_i = (chi(i)(-1-chi(i)) + 1/2)/(p-2).
    // (The row-sum total of u is -(p-1), so sum_j v_j = -1/2.)
    VectorXd closed(idx.size());
    auto v_of = [&](int64_t i) {
        double chi = (double)ctx.legendre(i);
        return (chi * (-1.0 - chi) + 0.5) / (double)(p - 2);
    };
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx.pairs[r];
        closed(r) = v_of(i) + v_of(j);
    }
    rep.closed_form_residual = (closed - low).cwiseAbs().maxCoeff();

    // Quadratic forms via the matrix-free shape operators.
    rep.quad_forms.clear();
    for (Shape s : {Shape::T301, Shape::T401, Shape::T421, Shape::T422, Shape::T411,
                    Shape::T441}) {
        ShapeOp op(g, s);
        VectorXd y;
        op.apply(u, y);
        rep.quad_forms.push_back(u.dot(y));
    }
    rep.u_t441_u = rep.quad_forms.back();

    // Exact character-sum identity: the ordered-tuple sum
    //   Q = sum_{a,b,c,d} chi(abcd) chi of all six differences
    // equals (p-1)(S1 - S2) with S1 evaluated through |K_3|^2.
    double q = 0.0;
    for (int64_t a = 0; a < p; ++a)
        for (int64_t b = 0; b < p; ++b) {
            int sab = ctx.legendre(a - b);
            if (sab == 0 || a == 0 || b == 0) continue;
            int cab = ctx.legendre((int64_t)a * b % p);
            for (int64_t c = 0; c < p; ++c) {
                if (c == 0) continue;
                int sac = ctx.legendre(a - c), sbc = ctx.legendre(b - c);
                if (sac == 0 || sbc == 0) continue;
                for (int64_t d = 1; d < p; ++d) {
                    int scd = ctx.legendre(c - d);
                    if (scd == 0) continue;
                    int sad = ctx.legendre(a - d), sbd = ctx.legendre(b - d);
                    if (sad == 0 || sbd == 0) continue;
                    int ccd = ctx.legendre((int64_t)c * d % p);
                    q += (double)(cab * ccd * sab * scd * sac * sad * sbc * sbd);
                }
            }
        }
    rep.char_sum_lhs = q;

    KloostermanTable k3 = build_kloosterman(ctx, 3);
    double s1 = 0.0;
    for (int64_t dd = 1; dd < p; ++dd)
        s1 += (double)ctx.legendre(dd) * std::norm(k3.at(dd));
    s1 *= (double)(p - 1) * std::pow((double)p, -1.5);
    double s2 = 0.0;
    for (int64_t x = 0; x < p; ++x) {
        if (x == p - 1) continue;
        for (int64_t y = 0; y < p; ++y) {
            if (y == p - 1) continue;
            s2 += (double)(ctx.legendre((int64_t)x * y % p) * ctx.legendre(x - y) *
                           ctx.legendre(y + 1) * ctx.legendre(x + 1));
        }
    }
    s2 *= 3.0;
    rep.s1 = s1;
    rep.s2 = s2;
    rep.char_sum_rhs = (double)(p - 1) * (s1 - s2);
    rep.identity_rel_err = std::abs(rep.char_sum_lhs - rep.char_sum_rhs) /
                           std::max(1.0, std::abs(rep.char_sum_rhs));

    // Relation to the u quadratic form: the cross terms cancel (odd number of
    // difference factors), so u*T441u = Q/4 + u0*T441u0 with u0_{ij} = chi(ij).
    VectorXd u0(idx.size());
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx.pairs[r];
        u0(r) = (double)ctx.legendre((int64_t)i * j);
    }
    ShapeOp t441(g, Shape::T441);
    VectorXd y;
    t441.apply(u0, y);
    rep.u0_t441_u0 = u0.dot(y);
    rep.relation_residual =
        std::abs(rep.u_t441_u - (rep.char_sum_lhs / 4.0 + rep.u0_t441_u0));
    return rep;
}

bool schur_chain_sound(const PaleyGraph& g, const FkParams& al, std::string* detail) {
    HBlocks h = assemble_H(g, al);
    VectorXd h11_eigs = sym_eigenvalues(h.h11);
    if (h11_eigs(0) <= 0) {
        if (detail) *detail = "H11 not positive definite";
        return true;  // premise fails; implication vacuously sound
    }
    MatrixXd schur = h.h22 - h.h12.transpose() * h.h11.inverse() * h.h12;
    double schur_min = sym_eigenvalues(schur)(0);
    if (schur_min < -1e-8) {
        if (detail) *detail = "Schur complement not PSD";
        return true;
    }
    PseudomomentMatrix m = assemble_M(g, al);
    double m_min = min_eigenvalue(m.data).value;
    double scale = std::max(1.0, m.data.cwiseAbs().maxCoeff());
    if (detail) {
        std::ostringstream os;
        os << "H11 min " << h11_eigs(0) << ", Schur min " << schur_min << ", M min " << m_min;
        *detail = os.str();
    }
    return m_min >= -1e-7 * scale;
}

}  // namespace paley
