#include "paley/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace paley {

namespace {

constexpr double kEps = 1e-9;

// Tableau with rows = constraints plus one objective row at the bottom.
// Columns: structural + slack + artificial + rhs.
struct Tableau {
    Eigen::MatrixXd t;
    std::vector<int> basis;
    int rows, cols;  // constraint rows, total columns incl. rhs

    double& rhs(int r) { return t(r, cols - 1); }

    // Bland's rule: entering = lowest-index column with positive reduced
    // profit, leaving = lowest-index eligible row.
    bool pivot_once(int obj_row, int allowed_cols) {
        int enter = -1;
        for (int j = 0; j < allowed_cols; ++j)
            if (t(obj_row, j) > kEps) { enter = j; break; }
        if (enter < 0) return false;  // optimal
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < rows; ++r) {
            if (t(r, enter) > kEps) {
                double ratio = rhs(r) / t(r, enter);
                if (ratio < best - kEps ||
                    (ratio < best + kEps && (leave < 0 || basis[r] < basis[leave]))) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) throw std::overflow_error("unbounded");
        double piv = t(leave, enter);
        t.row(leave) /= piv;
        for (int r = 0; r < (int)t.rows(); ++r) {
            if (r == leave) continue;
            double f = t(r, enter);
            if (f != 0.0) t.row(r) -= f * t.row(leave);
        }
        basis[leave] = enter;
        return true;
    }
};

}  // namespace

LpResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                     const Eigen::VectorXd& b) {
    const int m = (int)a.rows();
    const int n = (int)a.cols();
    LpResult out;

    // Count artificials: one per negative-rhs row (after negating the row,
    // the slack enters with coefficient -1 and cannot start basic).
    std::vector<int> art_of(m, -1);
    int n_art = 0;
    for (int r = 0; r < m; ++r)
        if (b(r) < 0) art_of[r] = n_art++;

    int cols = n + m + n_art + 1;
    Tableau tab;
    tab.rows = m;
    tab.cols = cols;
    tab.t = Eigen::MatrixXd::Zero(m + 2, cols);  // rows, then phase-2 and phase-1 objectives
    tab.basis.assign(m, -1);

    for (int r = 0; r < m; ++r) {
        double sign = (b(r) < 0) ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) tab.t(r, j) = sign * a(r, j);
        tab.t(r, n + r) = sign;  // slack (surplus when negated)
        tab.t(r, cols - 1) = sign * b(r);
        if (art_of[r] >= 0) {
            tab.t(r, n + m + art_of[r]) = 1.0;
            tab.basis[r] = n + m + art_of[r];
        } else {
            tab.basis[r] = n + r;
        }
    }

    const int obj2 = m;      // phase-2 objective row (maximize c'x)
    const int obj1 = m + 1;  // phase-1 objective row (maximize -sum artificials)
    for (int j = 0; j < n; ++j) tab.t(obj2, j) = c(j);

    if (n_art > 0) {
        for (int r = 0; r < m; ++r)
            if (art_of[r] >= 0) tab.t.row(obj1) += tab.t.row(r);
        for (int k = 0; k < n_art; ++k) tab.t(obj1, n + m + k) = 0.0;
        try {
            while (tab.pivot_once(obj1, n + m)) {}
        } catch (const std::overflow_error&) {
            out.status = LpStatus::Infeasible;  // cannot happen in phase 1
            return out;
        }
        if (tab.t(obj1, cols - 1) > 1e-7) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Drive any remaining artificial out of the basis if possible.
        for (int r = 0; r < m; ++r) {
            if (tab.basis[r] >= n + m) {
                for (int j = 0; j < n + m; ++j) {
                    if (std::abs(tab.t(r, j)) > kEps) {
                        double piv = tab.t(r, j);
                        tab.t.row(r) /= piv;
                        for (int rr = 0; rr < (int)tab.t.rows(); ++rr) {
                            if (rr == r) continue;
                            double f = tab.t(rr, j);
                            if (f != 0.0) tab.t.row(rr) -= f * tab.t.row(r);
                        }
                        tab.basis[r] = j;
                        break;
                    }
                }
            }
        }
    }

    // Phase 2: restore reduced costs for the current basis, then optimize.
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < n + m) {
            double f = tab.t(obj2, tab.basis[r]);
            if (f != 0.0) tab.t.row(obj2) -= f * tab.t.row(r);
        }
    }
    try {
        while (tab.pivot_once(obj2, n + m)) {}
    } catch (const std::overflow_error&) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    out.x = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m; ++r)
        if (tab.basis[r] < n) out.x(tab.basis[r]) = tab.rhs(r);
    out.value = c.dot(out.x);
    out.status = LpStatus::Optimal;
    return out;
}

}  // namespace paley
