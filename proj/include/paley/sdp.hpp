#pragma once

#include "paley/fk_optimizer.hpp"
#include "paley/paley_graph.hpp"

#include <string>

namespace paley {

/// Dense SDP: maximize <C, X> over X PSD subject to entry-equality classes,
/// forced-zero entries, and pinned entries.  Positions are stored once per
/// unordered entry; X is kept symmetric throughout.
struct SdpProblem {
    int64_t dim = 0;
    MatrixXd objective;
    std::vector<std::vector<std::pair<int, int>>> classes;  // entries sharing one value
    std::vector<std::pair<int, int>> zeros;
    std::vector<std::pair<std::pair<int, int>, double>> pinned;  // e.g. corner = 1
    // entry groups with a prescribed sum, e.g. unit trace
    struct SumConstraint {
        std::vector<std::pair<int, int>> entries;
        double total = 1.0;
    };
    std::vector<SumConstraint> sums;
    std::string name;
};

enum class SdpStatus { Optimal, MaxIter, Capped };

struct SdpSolution {
    double value = 0.0;
    MatrixXd x;  // PSD iterate
    SdpStatus status = SdpStatus::MaxIter;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

struct SdpOptions {
    double tol = 1e-5;
    int max_iter = 40000;
    double rho = 0.05;
    double over_relax = 1.6;
    bool adapt = true;  // residual-balancing rho updates (clamped)
    Deadline deadline;
    std::string trace_path;       // iteration/residual CSV when non-empty
    std::optional<MatrixXd> x0;   // warm start (defaults to the identity heuristic)
};

/// SOS2 program on an arbitrary graph: the (1+n)-dimensional SDP whose value
/// is the Lovasz theta function of the complement.
SdpProblem build_sos2(const Eigen::MatrixXi& adjacency);
SdpProblem build_sos2(const PaleyGraph& g);

/// Equivalent trace-normalized form of the same value (theta of the
/// complement): max <J,X>, tr X = 1, X_ij = 0 for distinct non-adjacent
/// i, j.  Far better conditioned for the splitting solver; the tests pin
/// its agreement with build_sos2.
SdpProblem build_sos2_trace_form(const Eigen::MatrixXi& adjacency);
SdpProblem build_sos2_trace_form(const PaleyGraph& g);

/// SOS2 value via the trace form (the route the sweeps use).
double sos2_value(const PaleyGraph& g, double tol, Deadline deadline = {});

/// Clique-compressed degree-4 SOS program (dim 1 + p + p(p-1)/4).
SdpProblem build_sos4(const PaleyGraph& g);

/// FK-restricted degree-4 program: classes keyed by |S u T| instead of S u T.
SdpProblem build_fk4(const PaleyGraph& g);

/// Alternating projections (affine / PSD cone) with augmented-Lagrangian
/// ascent, over-relaxation, and residual-balancing rho updates.
SdpSolution solve(const SdpProblem& prob, const SdpOptions& opts);
inline SdpSolution solve(const SdpProblem& prob, double tol, int max_iter) {
    SdpOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    return solve(prob, o);
}

}  // namespace paley
