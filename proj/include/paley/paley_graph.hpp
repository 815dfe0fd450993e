#pragma once

#include "paley/linalg.hpp"
#include "paley/prime_field.hpp"

namespace paley {

/// Paley graph on F_p (p = 1 mod 4): a ~ b iff chi(a-b) = 1.
/// Holds both the {0,1} adjacency matrix A and the {-1,0,1} Seidel matrix S
/// with S_ab = chi(a-b), related by S = 2A - J + I.
class PaleyGraph {
public:
    explicit PaleyGraph(PrimeContext ctx);

    const PrimeContext& ctx() const { return ctx_; }
    int64_t p() const { return ctx_.p(); }

    bool adjacent(int64_t a, int64_t b) const {
        return ctx_.legendre(a - b) == 1;
    }
    int seidel(int64_t a, int64_t b) const { return ctx_.legendre(a - b); }

    Eigen::MatrixXi adjacency_matrix() const;
    Eigen::MatrixXi seidel_matrix() const;
    MatrixXd seidel_matrix_d() const;

private:
    PrimeContext ctx_;
};

PaleyGraph build_paley(PrimeContext ctx);
inline PaleyGraph build_paley(int64_t p) { return build_paley(make_context(p)); }

struct StrongRegularity {
    int64_t lambda = 0;  // common neighbors of adjacent pairs
    int64_t mu = 0;      // common neighbors of non-adjacent pairs
    bool holds = false;
};

/// Counts common neighborhoods directly and compares with (p-5)/4, (p-1)/4.
StrongRegularity strong_regularity(const PaleyGraph& g);

struct Spectra {
    VectorXd adjacency_eigs;  // ascending
    VectorXd seidel_eigs;     // ascending
};

Spectra spectra(const PaleyGraph& g);

/// Exact clique number by branch and bound with greedy-coloring bounds
/// on bitset adjacency; vertices ordered by descending degree then index.
int clique_number(const PaleyGraph& g);
int clique_number_adj(const std::vector<std::vector<bool>>& adj);

struct ClassicalBounds {
    double hoffman = 0.0;           // sqrt(p)
    double hansen_podolskii = 0.0;  // sqrt(2p-1)/2 + 1
};

ClassicalBounds classical_bounds(int64_t p);

}  // namespace paley
