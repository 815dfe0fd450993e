#include "paley/block_circulant.hpp"

#include <cmath>
#include <numbers>

namespace paley {

double t441_tilde_entry(const PrimeContext& ctx, int64_t a, int64_t b, int64_t c, int64_t d) {
    return (double)(ctx.legendre(a - c) * ctx.legendre(a - d) * ctx.legendre(b - c) *
                    ctx.legendre(b - d));
}

std::pair<int64_t, int64_t> BlockCirculantForm::coords(int64_t x, int64_t y,
                                                       const PrimeContext& ctx) const {
    // (x, y) = (h^i a, h^i (a+1)) with h^i = y - x and a = x / (y - x).
    int64_t diff = ctx.reduce(y - x);
    int64_t i = ctx.dlog(diff);
    int64_t a = ctx.mul(x, ctx.inverse(diff));
    return {i, a};
}

BlockCirculantForm reorder_t441(const PaleyGraph& g) {
    const PrimeContext& ctx = g.ctx();
    int64_t p = ctx.p();
    BlockCirculantForm form;
    form.p = p;
    form.h = ctx.generator();
    form.blocks.resize(p - 1);
    // Block (0, i): rows (a, a+1), columns (h^i b, h^i (b+1)).
    int64_t hi = 1;
    for (int64_t i = 0; i < p - 1; ++i) {
        MatrixXd& blk = form.blocks[i];
        blk.resize(p, p);
        for (int64_t a = 0; a < p; ++a)
            for (int64_t b = 0; b < p; ++b)
                blk(a, b) = t441_tilde_entry(ctx, a, a + 1, ctx.mul(hi, b),
                                             ctx.mul(hi, b + 1));
        hi = ctx.mul(hi, form.h);
    }
    return form;
}

std::vector<SpectralSlice> spectral_slices(const BlockCirculantForm& form) {
    int64_t p = form.p;
    int64_t d = p - 1;
    std::vector<SpectralSlice> slices(d);
    for (int64_t j = 0; j < d; ++j) {
        slices[j].psi_index = j;
        slices[j].matrix = MatrixXcd::Zero(p, p);
    }
    for (int64_t i = 0; i < d; ++i) {
        for (int64_t j = 0; j < d; ++j) {
            double t = 2.0 * std::numbers::pi * (double)((i * j) % d) / (double)d;
            slices[j].matrix += cplx(std::cos(t), std::sin(t)) * form.blocks[i];
        }
    }
    return slices;
}

std::vector<VectorXd> slice_spectra(const BlockCirculantForm& form) {
    auto slices = spectral_slices(form);
    std::vector<VectorXd> out;
    out.reserve(slices.size());
    for (const auto& s : slices) out.push_back(herm_eigenvalues(s.matrix));
    return out;
}

double t441_norm_via_slices(const PaleyGraph& g) {
    BlockCirculantForm form = reorder_t441(g);
    double best = 0.0;
    for (const auto& ev : slice_spectra(form))
        best = std::max({best, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
    return best / 2.0;
}

MatrixXd charsum1_matrix(const PrimeContext& ctx) {
    int64_t p = ctx.p();
    MatrixXd t(p, p);
    for (int64_t i = 0; i < p; ++i)
        for (int64_t j = 0; j < p; ++j) {
            long long acc = 0;
            for (int64_t x = 0; x < p; ++x) {
                int64_t ix = ctx.mul(i, x);
                int64_t i1x = ctx.mul(i + 1, x);
                acc += ctx.legendre(ix - j) * ctx.legendre(ix - j - 1) *
                       ctx.legendre(i1x - j) * ctx.legendre(i1x - j - 1);
            }
            t(i, j) = (double)acc;
        }
    return t;
}

}  // namespace paley
