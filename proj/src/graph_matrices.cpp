#include "paley/graph_matrices.hpp"

#include "paley/block_circulant.hpp"
#include "paley/pseudomoments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace paley {

const std::vector<Shape>& all_shapes() {
    static const std::vector<Shape> shapes = {
        Shape::T311, Shape::T301, Shape::T441, Shape::T431, Shape::T421, Shape::T422,
        Shape::T423, Shape::T411, Shape::T401, Shape::U321, Shape::U311, Shape::U431,
        Shape::U421, Shape::U422, Shape::U423, Shape::U411, Shape::U412, Shape::U413,
        Shape::U541, Shape::U531, Shape::U532, Shape::U521, Shape::U522, Shape::U523,
        Shape::U511, Shape::U512, Shape::DIAMOND,
    };
    return shapes;
}

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::T311: return "T311";
        case Shape::T301: return "T301";
        case Shape::T441: return "T441";
        case Shape::T431: return "T431";
        case Shape::T421: return "T421";
        case Shape::T422: return "T422";
        case Shape::T423: return "T423";
        case Shape::T411: return "T411";
        case Shape::T401: return "T401";
        case Shape::U321: return "U321";
        case Shape::U311: return "U311";
        case Shape::U431: return "U431";
        case Shape::U421: return "U421";
        case Shape::U422: return "U422";
        case Shape::U423: return "U423";
        case Shape::U411: return "U411";
        case Shape::U412: return "U412";
        case Shape::U413: return "U413";
        case Shape::U541: return "U541";
        case Shape::U531: return "U531";
        case Shape::U532: return "U532";
        case Shape::U521: return "U521";
        case Shape::U522: return "U522";
        case Shape::U523: return "U523";
        case Shape::U511: return "U511";
        case Shape::U512: return "U512";
        case Shape::DIAMOND: return "DIAMOND";
    }
    return "?";
}

Shape shape_from_name(const std::string& name) {
    for (Shape s : all_shapes())
        if (shape_name(s) == name) return s;
    throw std::invalid_argument("unknown shape: " + name);
}

double shape_norm_exponent(Shape s) {
    switch (s) {
        case Shape::T311: return 0.5;
        case Shape::T301: return 1.0;   // exact: 2(p-2)
        case Shape::T441: return 1.25;
        case Shape::T431: return 1.0;
        case Shape::T421: return 1.5;
        case Shape::T422: return 1.5;
        case Shape::T423: return 1.0;
        case Shape::T411: return 1.5;
        case Shape::T401: return 2.0;   // exact: (p-2)(p-3)/2
        case Shape::U321: return 0.0;   // exact: 1
        case Shape::U311: return 0.0;   // exact: 2
        case Shape::U431: return 1.5;
        case Shape::U421:
        case Shape::U422:
        case Shape::U423:
        case Shape::U411:
        case Shape::U412:
        case Shape::U413: return 1.0;
        case Shape::U541:
        case Shape::U531:
        case Shape::U532:
        case Shape::U521:
        case Shape::U522:
        case Shape::U523:
        case Shape::U511:
        case Shape::U512: return 2.0;
        case Shape::DIAMOND: return 2.0;  // exact: (p-1)(p-3)
    }
    return 0.0;
}

namespace {

// Pattern class of a (row, col) pair of 2-subsets.
enum class Pattern { Diagonal, Intersecting, Disjoint };

Pattern pattern_of(int a, int b, int c, int d) {
    int inter = (int)(a == c) + (int)(a == d) + (int)(b == c) + (int)(b == d);
    if (inter == 2) return Pattern::Diagonal;
    if (inter == 1) return Pattern::Intersecting;
    return Pattern::Disjoint;
}

// For an intersecting pair, the (shared, row-only, col-only) roles.
void split_roles(int a, int b, int c, int d, int& sh, int& ro, int& co) {
    if (a == c) { sh = a; ro = b; co = d; }
    else if (a == d) { sh = a; ro = b; co = c; }
    else if (b == c) { sh = b; ro = a; co = d; }
    else { sh = b; ro = a; co = c; }
}

bool in4(int i, int a, int b, int c, int d) { return i == a || i == b || i == c || i == d; }

}  // namespace

double shape_entry(const MatrixXd& s, Shape shape, int a, int b, int c, int d) {
    int p = (int)s.rows();
    Pattern pat = pattern_of(a, b, c, d);
    switch (shape) {
        case Shape::T311: {
            if (pat != Pattern::Intersecting) return 0.0;
            int sh, ro, co;
            split_roles(a, b, c, d, sh, ro, co);
            return s(ro, co);
        }
        case Shape::T301:
            return pat == Pattern::Intersecting ? 1.0 : 0.0;
        case Shape::T441:
            if (pat != Pattern::Disjoint) return 0.0;
            return s(a, c) * s(a, d) * s(b, c) * s(b, d);
        case Shape::T431:
            if (pat != Pattern::Disjoint) return 0.0;
            return s(a, c) * s(a, d) * s(b, c) + s(a, c) * s(a, d) * s(b, d) +
                   s(a, c) * s(b, c) * s(b, d) + s(a, d) * s(b, c) * s(b, d);
        case Shape::T421:
            if (pat != Pattern::Disjoint) return 0.0;
            return s(a, c) * s(a, d) + s(b, c) * s(b, d);
        case Shape::T422:
            if (pat != Pattern::Disjoint) return 0.0;
            return s(a, c) * s(b, c) + s(a, d) * s(b, d);
        case Shape::T423:
            if (pat != Pattern::Disjoint) return 0.0;
            return s(a, c) * s(b, d) + s(a, d) * s(b, c);
        case Shape::T411:
            if (pat != Pattern::Disjoint) return 0.0;
            return s(a, c) + s(a, d) + s(b, c) + s(b, d);
        case Shape::T401:
            return pat == Pattern::Disjoint ? 1.0 : 0.0;
        case Shape::U321: {
            if (pat != Pattern::Diagonal) return 0.0;
            double acc = 0;
            for (int i = 0; i < p; ++i)
                if (i != a && i != b) acc += s(a, i) * s(b, i);
            return acc;
        }
        case Shape::U311: {
            if (pat != Pattern::Diagonal) return 0.0;
            double acc = 0;
            for (int i = 0; i < p; ++i)
                if (i != a && i != b) acc += s(a, i) + s(b, i);
            return acc;
        }
        case Shape::U431:
        case Shape::U421:
        case Shape::U422:
        case Shape::U423:
        case Shape::U411:
        case Shape::U412:
        case Shape::U413: {
            if (pat != Pattern::Intersecting) return 0.0;
            int sh, ro, co;
            split_roles(a, b, c, d, sh, ro, co);
            double acc = 0;
            for (int i = 0; i < p; ++i) {
                if (i == sh || i == ro || i == co) continue;
                switch (shape) {
                    case Shape::U431: acc += s(sh, i) * s(ro, i) * s(co, i); break;
                    case Shape::U421: acc += s(sh, i) * s(ro, i); break;
                    case Shape::U422: acc += s(sh, i) * s(co, i); break;
                    case Shape::U423: acc += s(ro, i) * s(co, i); break;
                    case Shape::U411: acc += s(sh, i); break;
                    case Shape::U412: acc += s(ro, i); break;
                    case Shape::U413: acc += s(co, i); break;
                    default: break;
                }
            }
            return acc;
        }
        case Shape::U541:
        case Shape::U531:
        case Shape::U532:
        case Shape::U521:
        case Shape::U522:
        case Shape::U523:
        case Shape::U511:
        case Shape::U512: {
            if (pat != Pattern::Disjoint) return 0.0;
            double acc = 0;
            for (int i = 0; i < p; ++i) {
                if (in4(i, a, b, c, d)) continue;
                switch (shape) {
                    case Shape::U541: acc += s(a, i) * s(b, i) * s(c, i) * s(d, i); break;
                    case Shape::U531:
                        acc += s(a, i) * s(b, i) * s(c, i) + s(a, i) * s(b, i) * s(d, i);
                        break;
                    case Shape::U532:
                        acc += s(a, i) * s(c, i) * s(d, i) + s(b, i) * s(c, i) * s(d, i);
                        break;
                    case Shape::U521: acc += s(a, i) * s(b, i); break;
                    case Shape::U522: acc += s(c, i) * s(d, i); break;
                    case Shape::U523:
                        acc += s(a, i) * s(c, i) + s(a, i) * s(d, i) + s(b, i) * s(c, i) +
                               s(b, i) * s(d, i);
                        break;
                    case Shape::U511: acc += s(a, i) + s(b, i); break;
                    case Shape::U512: acc += s(c, i) + s(d, i); break;
                    default: break;
                }
            }
            return acc;
        }
        case Shape::DIAMOND:
            throw std::invalid_argument("DIAMOND is vertex-indexed; use diamond_matrix");
    }
    return 0.0;
}

GraphMatrix build_graph_matrix(const PaleyGraph& g, Shape shape) {
    if (shape == Shape::DIAMOND) return diamond_matrix(g);
    MatrixXd s = g.seidel_matrix_d();
    PairIndexing idx(g.p());
    int64_t n = idx.size();
    GraphMatrix out{shape, g.p(), MatrixXd::Zero(n, n)};
    for (int64_t r = 0; r < n; ++r) {
        auto [a, b] = idx.pairs[r];
        for (int64_t c = 0; c < n; ++c) {
            auto [u, v] = idx.pairs[c];
            out.data(r, c) = shape_entry(s, shape, a, b, u, v);
        }
    }
    return out;
}

SubspaceProjections build_projections(int64_t p) {
    PairIndexing idx(p);
    int64_t n = idx.size();
    SubspaceProjections out;
    out.p = p;
    out.p0 = MatrixXd::Constant(n, n, 2.0 / ((double)p * (double)(p - 1)));

    // Mean-zero basis u^(k) = e_k - e_{p-1}, mapped through u -> (u_i + u_j),
    // then modified Gram-Schmidt.
    MatrixXd basis(n, p - 1);
    for (int64_t k = 0; k < p - 1; ++k) {
        VectorXd u = VectorXd::Zero(p);
        u(k) = 1.0;
        u(p - 1) = -1.0;
        u.array() -= u.mean();  // already mean zero, kept for clarity
        for (int64_t r = 0; r < n; ++r) {
            auto [i, j] = idx.pairs[r];
            basis(r, k) = u(i) + u(j);
        }
    }
    // Remove the constant component, then MGS with one reorthogonalization.
    for (int64_t k = 0; k < p - 1; ++k)
        basis.col(k).array() -= basis.col(k).mean();
    out.p1 = MatrixXd::Zero(n, n);
    MatrixXd q(n, p - 1);
    int64_t rank = 0;
    for (int64_t k = 0; k < p - 1; ++k) {
        VectorXd v = basis.col(k);
        for (int pass = 0; pass < 2; ++pass)
            for (int64_t i = 0; i < rank; ++i) v -= q.col(i).dot(v) * q.col(i);
        double nv = v.norm();
        if (nv > 1e-10) {
            q.col(rank) = v / nv;
            ++rank;
        }
    }
    for (int64_t i = 0; i < rank; ++i) out.p1 += q.col(i) * q.col(i).transpose();
    out.p2 = MatrixXd::Identity(n, n) - out.p0 - out.p1;
    return out;
}

VectorXd apply_p0(int64_t p, const VectorXd& x) {
    return VectorXd::Constant(x.size(), x.mean());
}

VectorXd apply_p0p1(int64_t p, const VectorXd& x) {
    PairIndexing idx(p);
    // Least-squares fit of x_{ij} by v_i + v_j; normal equations solve in
    // closed form thanks to the complete-graph structure.
    VectorXd rowsum = VectorXd::Zero(p);
    double total = 0.0;
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx.pairs[r];
        rowsum(i) += x(r);
        rowsum(j) += x(r);
        total += x(r);
    }
    double vsum = 2.0 * total / (double)(2 * p - 2);
    VectorXd v = (rowsum.array() - vsum) / (double)(p - 2);
    VectorXd y(idx.size());
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx.pairs[r];
        y(r) = v(i) + v(j);
    }
    return y;
}

VectorXd apply_p2(int64_t p, const VectorXd& x) { return x - apply_p0p1(p, x); }

double exact_decomposition_check(const PaleyGraph& g, Shape shape) {
    if (shape != Shape::T301 && shape != Shape::T401)
        throw std::invalid_argument("exact decomposition known for T301/T401 only");
    int64_t p = g.p();
    GraphMatrix t = build_graph_matrix(g, shape);
    SubspaceProjections proj = build_projections(p);
    MatrixXd expect;
    if (shape == Shape::T301)
        expect = 2.0 * (p - 2) * proj.p0 + (double)(p - 4) * proj.p1 - 2.0 * proj.p2;
    else
        expect = 0.5 * (p - 2) * (p - 3) * proj.p0 - (double)(p - 3) * proj.p1 + proj.p2;
    return (t.data - expect).cwiseAbs().maxCoeff();
}

NormResult spectral_norm(const GraphMatrix& m, double tol) {
    NormResult out;
    if (m.data.rows() == m.data.cols() && m.data.isApprox(m.data.transpose(), 1e-12)) {
        VectorXd ev = sym_eigenvalues(m.data);
        out.value = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        return out;
    }
    VectorXd sv = sym_eigenvalues(m.data.transpose() * m.data);
    out.value = std::sqrt(std::max(0.0, sv(sv.size() - 1)));
    return out;
}

GraphMatrix diamond_matrix(const PaleyGraph& g) {
    GraphMatrix out{Shape::DIAMOND, g.p(), diamond_matrix_from_seidel(g.seidel_matrix_d())};
    return out;
}

MatrixXd diamond_matrix_from_seidel(const MatrixXd& seidel) {
    int64_t p = seidel.rows();
    MatrixXd s2 = seidel * seidel;
    MatrixXd m = s2.array().square().matrix();
    m.array() -= (double)(p - 2);
    m.diagonal().setZero();
    return m;
}

// ---------------------------------------------------------------------------
// Matrix-free shape operators.

ShapeOp::ShapeOp(const PaleyGraph& g, Shape shape)
    : shape_(shape), p_(g.p()), idx_(g.p()), s_(g.seidel_matrix_d()) {
    s2_ = s_ * s_;
    srow_ = s_.rowwise().sum();
}

namespace {

MatrixXd to_matrix(const PairIndexing& idx, const VectorXd& x) {
    MatrixXd m = MatrixXd::Zero(idx.p, idx.p);
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx.pairs[r];
        m(i, j) = m(j, i) = x(r);
    }
    return m;
}

void from_matrix(const PairIndexing& idx, const MatrixXd& m, VectorXd& y) {
    y.resize(idx.size());
    for (int64_t r = 0; r < idx.size(); ++r) {
        auto [i, j] = idx.pairs[r];
        y(r) = m(i, j);
    }
}

}  // namespace

void ShapeOp::apply(const VectorXd& x, VectorXd& y) const { apply_impl(shape_, x, y); }

void ShapeOp::apply_transpose(const VectorXd& x, VectorXd& y) const {
    // Transposes stay inside the shape family.
    switch (shape_) {
        case Shape::U421: apply_impl(Shape::U422, x, y); return;
        case Shape::U422: apply_impl(Shape::U421, x, y); return;
        case Shape::U412: apply_impl(Shape::U413, x, y); return;
        case Shape::U413: apply_impl(Shape::U412, x, y); return;
        case Shape::T421: apply_impl(Shape::T422, x, y); return;
        case Shape::T422: apply_impl(Shape::T421, x, y); return;
        case Shape::U531: apply_impl(Shape::U532, x, y); return;
        case Shape::U532: apply_impl(Shape::U531, x, y); return;
        case Shape::U521: apply_impl(Shape::U522, x, y); return;
        case Shape::U522: apply_impl(Shape::U521, x, y); return;
        case Shape::U511: apply_impl(Shape::U512, x, y); return;
        case Shape::U512: apply_impl(Shape::U511, x, y); return;
        default: apply_impl(shape_, x, y); return;  // symmetric shapes
    }
}

void ShapeOp::apply_impl(Shape s, const VectorXd& x, VectorXd& y) const {
    const int64_t p = p_;
    const MatrixXd X = to_matrix(idx_, x);
    const VectorXd R = X.rowwise().sum();
    const double total = 0.5 * R.sum();
    y.resize(idx_.size());

    auto t401_like = [&](const MatrixXd& Xw) {
        // y_ab = sum over disjoint {c,d} of Xw_cd
        VectorXd Rw = Xw.rowwise().sum();
        double tw = 0.5 * Rw.sum();
        VectorXd out(idx_.size());
        for (int64_t r = 0; r < idx_.size(); ++r) {
            auto [a, b] = idx_.pairs[r];
            out(r) = tw - Rw(a) - Rw(b) + Xw(a, b);
        }
        return out;
    };
    auto t411_like = [&](const MatrixXd& W) {
        // y_ab = sum over disjoint {c,d} of (W_ac + W_ad + W_bc + W_bd) x_cd
        VectorXd out(idx_.size());
        for (int64_t r = 0; r < idx_.size(); ++r) {
            auto [a, b] = idx_.pairs[r];
            double acc = 0;
            for (int64_t c = 0; c < p; ++c) {
                if (c == a || c == b) continue;
                acc += (W(a, c) + W(b, c)) * (R(c) - X(c, a) - X(c, b));
            }
            out(r) = acc;
        }
        return out;
    };

    switch (s) {
        case Shape::T311: {
            MatrixXd G = X * s_;
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                y(r) = G(a, b) + G(b, a);
            }
            return;
        }
        case Shape::T301: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                y(r) = R(a) + R(b) - 2.0 * X(a, b);
            }
            return;
        }
        case Shape::T401: {
            y = t401_like(X);
            return;
        }
        case Shape::T411: {
            y = t411_like(s_);
            return;
        }
        case Shape::T422: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    double w = s_(a, c) * s_(b, c);
                    if (w != 0.0) acc += w * (R(c) - X(c, a) - X(c, b));
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::T421: {
            MatrixXd G = s_ * X;
            MatrixXd K = G * s_;
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                y(r) = 0.5 * (K(a, a) + K(b, b)) - s_(a, b) * (G(a, b) + G(b, a));
            }
            return;
        }
        case Shape::T423: {
            MatrixXd G = s_ * X;
            MatrixXd K = G * s_;
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                y(r) = K(a, b) - s_(a, b) * (G(a, a) + G(b, b)) + X(a, b);
            }
            return;
        }
        case Shape::T431: {
            MatrixXd G = X * s_;  // (XS)
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    double w = s_(a, c) * s_(b, c);
                    if (w != 0.0)
                        acc += w * (G(c, a) + G(c, b) - s_(a, b) * (X(c, b) + X(c, a)));
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::T441: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    double wc = s_(a, c) * s_(b, c);
                    if (wc == 0.0) continue;
                    double inner = 0;
                    for (int64_t d = 0; d < p; ++d) {
                        double wd = s_(a, d) * s_(b, d);
                        if (wd != 0.0) inner += wd * X(c, d);
                    }
                    acc += wc * inner;
                }
                y(r) = 0.5 * acc;
            }
            return;
        }
        case Shape::U321: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                y(r) = s2_(a, b) * x(r);
            }
            return;
        }
        case Shape::U311: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                y(r) = (srow_(a) + srow_(b) - 2.0 * s_(a, b)) * x(r);
            }
            return;
        }
        case Shape::U431: {
            MatrixXd G = s_ * X;
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t i = 0; i < p; ++i) {
                    double w = s_(a, i) * s_(b, i);
                    if (w != 0.0) acc += w * (G(i, a) + G(i, b));
                }
                acc -= (srow_(a) + srow_(b) - 2.0 * s_(a, b)) * X(a, b);
                y(r) = acc;
            }
            return;
        }
        case Shape::U421: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    if (c == a || c == b) continue;
                    acc += (s2_(a, b) - s_(a, c) * s_(b, c)) * (X(a, c) + X(b, c));
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::U422: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    if (c == a || c == b) continue;
                    acc += (s2_(a, c) - s_(a, b) * s_(c, b)) * X(a, c);
                    acc += (s2_(b, c) - s_(a, b) * s_(c, a)) * X(b, c);
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::U423: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    if (c == a || c == b) continue;
                    acc += (s2_(b, c) - s_(a, b) * s_(a, c)) * X(a, c);
                    acc += (s2_(a, c) - s_(a, b) * s_(b, c)) * X(b, c);
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::U411: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    if (c == a || c == b) continue;
                    acc += (srow_(a) - s_(a, b) - s_(a, c)) * X(a, c);
                    acc += (srow_(b) - s_(a, b) - s_(b, c)) * X(b, c);
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::U412: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    if (c == a || c == b) continue;
                    acc += (srow_(b) - s_(a, b) - s_(b, c)) * X(a, c);
                    acc += (srow_(a) - s_(a, b) - s_(a, c)) * X(b, c);
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::U413: {
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double acc = 0;
                for (int64_t c = 0; c < p; ++c) {
                    if (c == a || c == b) continue;
                    acc += (srow_(c) - s_(c, a) - s_(c, b)) * (X(a, c) + X(b, c));
                }
                y(r) = acc;
            }
            return;
        }
        case Shape::U521: {
            VectorXd t422;
            apply_impl(Shape::T422, x, t422);
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double disj = total - R(a) - R(b) + X(a, b);
                y(r) = s2_(a, b) * disj - t422(r);
            }
            return;
        }
        case Shape::U522: {
            VectorXd t421;
            apply_impl(Shape::T421, x, t421);
            MatrixXd Xw = s2_.cwiseProduct(X);
            VectorXd first = t401_like(Xw);
            y = first - t421;
            return;
        }
        case Shape::U523: {
            VectorXd q = t411_like(s2_);
            VectorXd t411x;
            apply_impl(Shape::T411, x, t411x);
            MatrixXd Xs = s_.cwiseProduct(X);
            // reuse the T411 kernel on the reweighted vector
            VectorXd xs;
            from_matrix(idx_, Xs, xs);
            VectorXd t411xs;
            apply_impl(Shape::T411, xs, t411xs);
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                y(r) = q(r) - s_(a, b) * t411x(r) - t411xs(r);
            }
            return;
        }
        case Shape::U511: {
            VectorXd t411x;
            apply_impl(Shape::T411, x, t411x);
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double disj = total - R(a) - R(b) + X(a, b);
                y(r) = (srow_(a) + srow_(b) - 2.0 * s_(a, b)) * disj - t411x(r);
            }
            return;
        }
        case Shape::U512: {
            VectorXd t411x;
            apply_impl(Shape::T411, x, t411x);
            MatrixXd Xw(p, p);
            for (int64_t c = 0; c < p; ++c)
                for (int64_t d = 0; d < p; ++d)
                    Xw(c, d) = (srow_(c) + srow_(d) - 2.0 * s_(c, d)) * X(c, d);
            y = t401_like(Xw) - t411x;
            return;
        }
        case Shape::U531: {
            MatrixXd G = s_ * X;
            VectorXd SR = s_ * R;
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double part_a = 0;
                for (int64_t i = 0; i < p; ++i) {
                    double w = s_(a, i) * s_(b, i);
                    if (w != 0.0) part_a += w * (SR(i) - G(i, a) - G(i, b));
                }
                part_a -= (srow_(b) - s_(a, b)) * (R(a) - X(a, b));
                part_a -= (srow_(a) - s_(a, b)) * (R(b) - X(a, b));
                double part_b = 0;
                for (int64_t d = 0; d < p; ++d) {
                    double w = s_(a, d) * s_(b, d);
                    if (w != 0.0)
                        part_b -= w * (G(d, d) - s_(a, d) * X(a, d) - s_(b, d) * X(b, d));
                }
                y(r) = part_a + part_b;
            }
            return;
        }
        case Shape::U532: {
            // entry = T3(a,c,d) + T3(b,c,d) - S_ab (S_ac S_ad + S_bc S_bd)
            // with T3(x,c,d) = sum_i S_xi S_ci S_di over all of F_p.
            MatrixXd G = s_ * X;
            MatrixXd K = s_ * X * s_;
            VectorXd t421x;
            apply_impl(Shape::T421, x, t421x);
            VectorXd u_all(p);  // sum_i S_ai K_ii for each a
            for (int64_t a = 0; a < p; ++a) {
                double acc = 0;
                for (int64_t i = 0; i < p; ++i) acc += s_(a, i) * K(i, i);
                u_all(a) = acc;
            }
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double a1 = 0, b1 = 0, a2 = 0, b2 = 0;
                for (int64_t d = 0; d < p; ++d) {
                    a1 += (srow_(d) - s_(a, d)) * X(a, d);
                    b1 += (srow_(d) - s_(b, d)) * X(b, d);
                    double w = s_(a, d) * s_(b, d);
                    if (w != 0.0) {
                        a2 += w * G(d, b);
                        b2 += w * G(d, a);
                    }
                }
                double ta = 0.5 * (u_all(a) - 2 * a1 - 2 * a2 + 2 * (srow_(b) - s_(a, b)) * X(a, b));
                double tb = 0.5 * (u_all(b) - 2 * b1 - 2 * b2 + 2 * (srow_(a) - s_(a, b)) * X(a, b));
                y(r) = ta + tb - s_(a, b) * t421x(r);
            }
            return;
        }
        case Shape::U541: {
            MatrixXd K = s_ * X * s_;
            for (int64_t r = 0; r < idx_.size(); ++r) {
                auto [a, b] = idx_.pairs[r];
                double u = 0;
                for (int64_t i = 0; i < p; ++i) u += s_(a, i) * s_(b, i) * K(i, i);
                double corr_a = 0, corr_b = 0;
                for (int64_t d = 0; d < p; ++d) {
                    if (d == a || d == b) continue;
                    corr_a += (s2_(b, d) - s_(a, b) * s_(a, d)) * X(a, d);
                    corr_b += (s2_(a, d) - s_(a, b) * s_(b, d)) * X(b, d);
                }
                y(r) = 0.5 * (u - 2.0 * corr_a - 2.0 * corr_b - 2.0 * (p - 2) * X(a, b));
            }
            return;
        }
        default:
            throw std::logic_error("apply_impl: unhandled shape");
    }
}

NormResult shape_norm(const PaleyGraph& g, Shape shape, double tol) {
    if (shape == Shape::DIAMOND) return spectral_norm(diamond_matrix(g), tol);
    PairIndexing idx(g.p());
    if (idx.size() <= 2000) return spectral_norm(build_graph_matrix(g, shape), tol);
    if (shape == Shape::T441) {
        // exact block-circulant route; power iteration on the pair-indexed
        // matrix is far slower and its top eigenvalue clusters
        return {t441_norm_via_slices(g), true, 0};
    }
    ShapeOp op(g, shape);
    auto apply = [&](const VectorXd& x, VectorXd& y) { op.apply(x, y); };
    auto apply_t = [&](const VectorXd& x, VectorXd& y) { op.apply_transpose(x, y); };
    auto pr = power_iteration_norm(apply, apply_t, (int)op.dim(), (int)op.dim(), tol, 2000,
                                   default_seed());
    return {pr.sigma, pr.converged, pr.iterations};
}

NormResult restricted_norm(const PaleyGraph& g, Shape shape, int i, int j, double tol) {
    if (i < 0 || i > 2 || j < 0 || j > 2) throw std::invalid_argument("projector index in 0..2");
    int64_t p = g.p();
    PairIndexing idx(p);
    auto project = [&](int which, const VectorXd& x) -> VectorXd {
        if (which == 0) return apply_p0(p, x);
        if (which == 1) return apply_p0p1(p, x) - apply_p0(p, x);
        return apply_p2(p, x);
    };
    if (idx.size() <= 2000) {
        GraphMatrix m = build_graph_matrix(g, shape);
        SubspaceProjections proj = build_projections(p);
        const MatrixXd& pi = (i == 0) ? proj.p0 : (i == 1) ? proj.p1 : proj.p2;
        const MatrixXd& pj = (j == 0) ? proj.p0 : (j == 1) ? proj.p1 : proj.p2;
        GraphMatrix r{shape, p, pi * m.data * pj};
        return spectral_norm(r, tol);
    }
    ShapeOp op(g, shape);
    auto apply = [&](const VectorXd& x, VectorXd& y) {
        VectorXd t = project(j, x);
        VectorXd u;
        op.apply(t, u);
        y = project(i, u);
    };
    auto apply_t = [&](const VectorXd& x, VectorXd& y) {
        VectorXd t = project(i, x);
        VectorXd u;
        op.apply_transpose(t, u);
        y = project(j, u);
    };
    auto pr = power_iteration_norm(apply, apply_t, (int)op.dim(), (int)op.dim(), tol, 2000,
                                   default_seed());
    return {pr.sigma, pr.converged, pr.iterations};
}

namespace {

// Direct assembly of H^{2,2} from the bipartite-indicator entry table.
MatrixXd h22_direct(const PaleyGraph& g, const FkParams& al) {
    PairIndexing idx(g.p());
    int64_t n = idx.size();
    MatrixXd h(n, n);
    for (int64_t r = 0; r < n; ++r) {
        auto [a, b] = idx.pairs[r];
        for (int64_t c = 0; c < n; ++c) {
            auto [u, v] = idx.pairs[c];
            Pattern pat = pattern_of(a, b, u, v);
            if (pat == Pattern::Diagonal) {
                h(r, c) = al.a2 - al.a2 * al.a2;
            } else if (pat == Pattern::Intersecting) {
                int sh, ro, co;
                split_roles(a, b, u, v, sh, ro, co);
                double ind = (g.seidel(ro, co) == 1) ? 1.0 : 0.0;
                h(r, c) = al.a3 * ind - al.a2 * al.a2;
            } else {
                double ind = 1.0;
                for (int x : {a, b})
                    for (int y : {u, v})
                        if (g.seidel(x, y) != 1) ind = 0.0;
                h(r, c) = al.a4 * ind - al.a2 * al.a2;
            }
        }
    }
    return h;
}

// Direct assembly of H^{1,2}; rows are vertices, columns pairs.
MatrixXd h12_direct(const PaleyGraph& g, const FkParams& al) {
    int64_t p = g.p();
    PairIndexing idx(p);
    MatrixXd h(p, idx.size());
    for (int64_t a = 0; a < p; ++a) {
        for (int64_t c = 0; c < idx.size(); ++c) {
            auto [u, v] = idx.pairs[c];
            if (a == u || a == v) {
                h(a, c) = al.a2 - al.a1 * al.a2;
            } else {
                double ind = (g.adjacent(a, u) && g.adjacent(a, v)) ? 1.0 : 0.0;
                h(a, c) = al.a3 * ind - al.a1 * al.a2;
            }
        }
    }
    return h;
}

}  // namespace

SchurResiduals schur_decomposition_residual(const PaleyGraph& g, const FkParams& al) {
    int64_t p = g.p();
    PairIndexing idx(p);
    int64_t n = idx.size();

    auto dense = [&](Shape s) { return build_graph_matrix(g, s).data; };

    // H^{2,2} as a weighted sum of graph matrices.
    MatrixXd h22 = (al.a2 - al.a2 * al.a2) * MatrixXd::Identity(n, n);
    h22 += (al.a3 / 2 - al.a2 * al.a2) * dense(Shape::T301);
    h22 += (al.a3 / 2) * dense(Shape::T311);
    h22 += (al.a4 / 16 - al.a2 * al.a2) * dense(Shape::T401);
    h22 += (al.a4 / 16) * (dense(Shape::T411) + dense(Shape::T421) + dense(Shape::T422) +
                           dense(Shape::T423) + dense(Shape::T431) + dense(Shape::T441));

    // H^{2,1} H^{1,2} as a weighted sum of graph matrices.
    double a12 = al.a1 * al.a2;
    double x = al.a2 - a12;
    double c_id = 2 * x * x + (p - 2) * (a12 * a12 + al.a3 * al.a3 / 4 - a12 * al.a3 / 2);
    double c_u3 = al.a3 * al.a3 / 4 - a12 * al.a3 / 2;
    double c_t301 = x * (al.a2 - 3 * a12 + al.a3) +
                    (p - 3) * (a12 * a12 - a12 * al.a3 / 2 + al.a3 * al.a3 / 8);
    double c_t311 = x * al.a3;
    double c_u411 = al.a3 * al.a3 / 8 - a12 * al.a3 / 2;
    double c_u41x = al.a3 * al.a3 / 8 - a12 * al.a3 / 4;
    double c_u423 = al.a3 * al.a3 / 8;
    double c_t401 = 2 * x * (al.a3 - 2 * a12) + (p - 4) * std::pow(a12 - al.a3 / 4, 2);
    double c_t411 = x * al.a3 / 2;
    double c_u51x = al.a3 * al.a3 / 16 - a12 * al.a3 / 4;
    double c_u52x = al.a3 * al.a3 / 16;

    MatrixXd rhs = c_id * MatrixXd::Identity(n, n);
    rhs += c_u3 * (dense(Shape::U311) + dense(Shape::U321));
    rhs += c_t301 * dense(Shape::T301) + c_t311 * dense(Shape::T311);
    rhs += c_u411 * dense(Shape::U411);
    rhs += c_u41x * (dense(Shape::U412) + dense(Shape::U413) + dense(Shape::U421) +
                     dense(Shape::U422));
    rhs += c_u423 * (dense(Shape::U423) + dense(Shape::U431));
    rhs += c_t401 * dense(Shape::T401) + c_t411 * dense(Shape::T411);
    rhs += c_u51x * (dense(Shape::U511) + dense(Shape::U512) + dense(Shape::U521) +
                     dense(Shape::U522));
    rhs += c_u52x * (dense(Shape::U523) + dense(Shape::U531) + dense(Shape::U532) +
                     dense(Shape::U541));

    // The display expands the i in (L u R) cross terms of H21 H12 as if the
    // row and column pairs were edges.  Expanding the bipartite indicators
    // honestly replaces x a3 (1 + S_bd)-style terms with products of edge
    // indicators; the difference is x a3 times the matrix below (the U-shape
    // reductions use S^2 = pI - J, so this form is specific to Paley input).
    MatrixXd slip = dense(Shape::T301) + 0.5 * dense(Shape::T311) +
                    0.25 * (dense(Shape::U411) + dense(Shape::U421) + dense(Shape::U422)) +
                    dense(Shape::T401) - 0.25 * (dense(Shape::T421) + dense(Shape::T422));
    MatrixXd corrected = rhs - x * al.a3 * slip;

    MatrixXd h12 = h12_direct(g, al);
    MatrixXd product = h12.transpose() * h12;
    SchurResiduals out;
    out.h22 = (h22 - h22_direct(g, al)).cwiseAbs().maxCoeff();
    out.h21h12 = (corrected - product).cwiseAbs().maxCoeff();
    out.h21h12_printed = (rhs - product).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace paley
