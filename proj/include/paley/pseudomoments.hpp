#pragma once

#include "paley/linalg.hpp"
#include "paley/paley_graph.hpp"

namespace paley {

/// FK pseudomoment sequence (alpha_0 = 1 implicit).
struct FkParams {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
};

/// alpha_1 = c p^{-2/3}, alpha_2 = 4 a1^2, alpha_3 = 8 a1^3, alpha_4 = 512 a1^4.
FkParams theorem_alphas(double c, int64_t p);

/// Clique-compressed index set of the degree-4 pseudomoment matrix:
/// empty set, the p singletons, then the edges of G_p in pair-lex order.
struct CliqueBasis {
    int64_t p = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int64_t> edge_index_of_pair;  // by PairIndexing index, -1 if non-edge

    explicit CliqueBasis(const PaleyGraph& g);
    int64_t dim() const { return 1 + p + (int64_t)edges.size(); }
};

struct PseudomomentMatrix {
    int64_t p = 0;
    int64_t dim = 0;
    int64_t n_edges = 0;
    MatrixXd data;
};

/// M_{S,T} = alpha_{|S u T|} when S u T is a clique, else 0; objective p*a1.
PseudomomentMatrix assemble_M(const PaleyGraph& g, const FkParams& alpha);

struct HBlocks {
    MatrixXd h11;  // p x p
    MatrixXd h12;  // p x C(p,2)
    MatrixXd h22;  // C(p,2) x C(p,2)
};

/// Bipartite-indicator filling of the Schur complement blocks.
HBlocks assemble_H(const PaleyGraph& g, const FkParams& alpha);

/// Residual between N (Schur complement of the 1x1 corner of M) and the
/// principal submatrix of H on singletons + edges.
double h_vs_n_residual(const PaleyGraph& g, const FkParams& alpha);

struct MinEig {
    double value = 0.0;
    bool converged = true;
};

/// Smallest eigenvalue: dense solver up to dim 2500, Lanczos beyond.
MinEig min_eigenvalue(const MatrixXd& m);

struct ConstructionPoint {
    int64_t p = 0;
    double min_eig = 0.0;
    bool psd = false;
    double largest_feasible_c = 0.0;  // on the grid 0.01 * k
};

/// Feasibility of the closed-form alphas across a range of primes, plus the
/// largest feasible c on a 0.01 grid per prime.
std::vector<ConstructionPoint> verify_main_construction(double c,
                                                        const std::vector<int64_t>& primes,
                                                        double c_grid_max = 0.30);

struct PseudomomentSumReport {
    double triangle_sum = 0.0, triangle_expected = 0.0;    // sum E[x0 x1 xi]
    double pair_sum = 0.0, pair_expected = 0.0;            // sum E[x0 xi]
    double triple_sum = 0.0, triple_expected = 0.0;        // sum E[x0 xi xj]
    double quad_sum = 0.0, quad_main_term = 0.0;           // sum E[x0 x1 xi xj]
    double quad_deviation_ratio = 0.0;                     // |dev| / (p^{3/2} a4)
    bool exact_identities_hold = false;
};

PseudomomentSumReport pseudomoment_sum_checks(const PaleyGraph& g, const FkParams& alpha);

struct UQuadraticReport {
    double u_norm2 = 0.0;
    double u_low_norm2 = 0.0;           // ||(P0+P1)u||^2, numeric
    double closed_form_residual = 0.0;  // closed-form v_i fit vs numeric projection
    // quadratic forms u* T u, keyed in fixed order:
    // T301, T401, T421, T422, T411, T441
    std::vector<double> quad_forms;
    // the exact chain for the disjoint-support character sum:
    double char_sum_lhs = 0.0;   // sum_{a,b,c,d} chi(abcd) chi(all six differences)
    double char_sum_rhs = 0.0;   // (p-1)(S1 - S2) with S1 via chi(d)|K3(d)|^2
    double s1 = 0.0, s2 = 0.0;
    double identity_rel_err = 0.0;
    // relation of the character sum to the u quadratic form:
    // u* T441 u = lhs/4 + u0* T441 u0 with u0_{ij} = chi(ij)
    double u_t441_u = 0.0;
    double u0_t441_u0 = 0.0;
    double relation_residual = 0.0;
};

UQuadraticReport u_quadratic_forms(const PaleyGraph& g);

/// The vector u_{ij} = chi(ij)(chi(i-j)+1) on pair space.
VectorXd u_vector(const PaleyGraph& g);

/// Schur-chain soundness: if H11 > 0 and the Schur complement of H11 in H
/// is >= -1e-8, then M is PSD within 1e-7 * scale.
bool schur_chain_sound(const PaleyGraph& g, const FkParams& alpha, std::string* detail = nullptr);

}  // namespace paley
