#pragma once

#include "paley/linalg.hpp"
#include "paley/paley_graph.hpp"

namespace paley {

/// Block-circulant reordering of the ordered-pair lift of T^{4,4,1} under
/// the affine group: block-row i holds the pairs (h^i a, h^i (a+1)).
struct BlockCirculantForm {
    int64_t p = 0;
    int64_t h = 0;                 // primitive root
    std::vector<MatrixXd> blocks;  // p-1 blocks, each p x p

    /// (block index, offset within block) of the ordered pair (x, y).
    std::pair<int64_t, int64_t> coords(int64_t x, int64_t y, const PrimeContext& ctx) const;
};

BlockCirculantForm reorder_t441(const PaleyGraph& g);

/// Entry of the ordered-pair lift itself (for reassembly checks).
double t441_tilde_entry(const PrimeContext& ctx, int64_t a, int64_t b, int64_t c, int64_t d);

struct SpectralSlice {
    int64_t psi_index = 0;
    MatrixXcd matrix;  // p x p Hermitian
};

/// S^(psi_j) = sum_i exp(2 pi i i j/(p-1)) B^(i) for j = 0..p-2.
std::vector<SpectralSlice> spectral_slices(const BlockCirculantForm& form);

/// ||T^{4,4,1}|| = max_psi ||S^(psi)|| / 2, the preferred route at large p.
double t441_norm_via_slices(const PaleyGraph& g);

/// Eigenvalues of every slice, each sorted ascending.
std::vector<VectorXd> slice_spectra(const BlockCirculantForm& form);

/// The p x p character-sum matrix T_ij = sum_x chi((ix-j)(ix-j-1)((i+1)x-j)((i+1)x-j-1)).
MatrixXd charsum1_matrix(const PrimeContext& ctx);

}  // namespace paley
