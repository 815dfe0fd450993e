#pragma once

#include "paley/pseudomoments.hpp"

#include <chrono>
#include <optional>

namespace paley {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

inline bool past(const Deadline& d) {
    return d && std::chrono::steady_clock::now() > *d;
}

/// PSD oracle for the clique-compressed pseudomoment matrix M(alpha):
/// structured matvec in O(E p^2), dense eigensolver below dim 2500 and
/// Lanczos above.
class FkOracle {
public:
    explicit FkOracle(const PaleyGraph& g);

    int64_t dim() const { return dim_; }
    int64_t p() const { return p_; }

    /// y = M(alpha) x without materializing M.
    void matvec(const FkParams& alpha, const VectorXd& x, VectorXd& y) const;

    struct Report {
        double min_eig = 0.0;
        double gershgorin = 1.0;  // max row sum of M(alpha), alpha >= 0
        MatrixXd vectors;         // bottom eigenvector estimates (columns)
        bool converged = true;
    };
    Report min_eig(const FkParams& alpha, int want_vectors) const;

    /// v' M(alpha) v = g0 + g . alpha; returns (g0, g).
    void quad_form_coeffs(const VectorXd& v, double& g0, Eigen::Vector4d& g) const;

private:
    PaleyGraph g_;
    int64_t p_, dim_;
    std::vector<std::pair<int, int>> edges_;
    MatrixXd adj_;                       // 0/1 adjacency as doubles
    std::vector<int64_t> edge_of_pair_;  // PairIndexing index -> edge id or -1
};

struct FkResult {
    double lower = 0.0;       // objective of the best certified-feasible point
    double upper = 0.0;       // LP relaxation bound over the accumulated cuts
    double value = 0.0;       // midpoint, the reported FK4 value
    FkParams best_alpha;
    int oracle_calls = 0;
    bool converged = false;   // bracket width < tol
    bool capped = false;      // deadline or iteration cap hit
};

struct FkOptions {
    double tol = 1e-3;          // bracket width target on the objective p*a1
    int max_oracle_calls = 400;
    Deadline deadline;
    std::optional<FkParams> warm_start;  // a known-feasible point to seed the bracket
};

/// maximize p * alpha_1 over { alpha in [0,1]^4 : M(alpha) PSD } by
/// eigenvector cutting planes around a bisected objective level.
FkResult fk4_value(const PaleyGraph& g, const FkOptions& opts);
inline FkResult fk4_value(const PaleyGraph& g, double tol) {
    FkOptions o;
    o.tol = tol;
    return fk4_value(g, o);
}

}  // namespace paley
