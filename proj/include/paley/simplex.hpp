#pragma once

#include <Eigen/Dense>

namespace paley {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double value = 0.0;
};

/// maximize c'x subject to A x <= b, x >= 0.
/// Dense two-phase tableau simplex with Bland's rule; intended for the tiny
/// cutting-plane subproblems (a handful of variables, a few hundred rows).
LpResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                     const Eigen::VectorXd& b);

}  // namespace paley
