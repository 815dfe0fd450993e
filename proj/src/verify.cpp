#include "paley/verify.hpp"

#include "paley/block_circulant.hpp"
#include "paley/character_sums.hpp"
#include "paley/fk_optimizer.hpp"
#include "paley/graph_matrices.hpp"
#include "paley/sdp.hpp"
#include "paley/sweep.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

namespace paley {

namespace {

struct Collector {
    VerifyReport& rep;
    std::string suite;

    void hard(const std::string& name, int64_t p, bool pass, double measured,
              const std::string& note = "") {
        rep.checks.push_back({suite, name, p, true, pass, measured, note});
    }
    void soft(const std::string& name, int64_t p, double measured,
              const std::string& note = "") {
        rep.checks.push_back({suite, name, p, false, true, measured, note});
    }
};

void verify_field(Collector c, const std::vector<int64_t>& primes) {
    for (int64_t p : primes) {
        PrimeContext ctx = make_context(p);
        int plus = 0, minus = 0;
        for (int64_t a = 1; a < p; ++a) (ctx.legendre(a) == 1 ? plus : minus)++;
        c.hard("legendre-balance", p, plus == (p - 1) / 2 && minus == (p - 1) / 2,
               (double)plus);
        bool mult = true, euler = true, inv = true;
        for (int64_t a = 1; a < p && mult; ++a)
            for (int64_t b = 1; b < p; ++b)
                if (ctx.legendre(a * b % p) != ctx.legendre(a) * ctx.legendre(b)) {
                    mult = false;
                    break;
                }
        for (int64_t a = 1; a < p; ++a) {
            if (ctx.legendre(a) != (PrimeContext::pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1))
                euler = false;
            if (ctx.legendre(a) * ctx.legendre(ctx.inverse(a)) != 1) inv = false;
        }
        c.hard("legendre-multiplicative", p, mult, 0);
        c.hard("euler-criterion", p, euler, 0);
        c.hard("legendre-inverse", p, inv, 0);

        double unity_err = 0;
        for (int64_t j = 0; j < std::min<int64_t>(p, 64); ++j)
            for (int64_t k = 0; k < std::min<int64_t>(p, 64); ++k)
                unity_err = std::max(unity_err,
                                     std::abs(ctx.additive_character(j) *
                                                  ctx.additive_character(k) -
                                              ctx.additive_character(j + k)));
        c.hard("unity-group-law", p, unity_err < 1e-12, unity_err);

        double ortho = 0;
        int64_t jmax = std::min<int64_t>(p - 1, 24);
        for (int64_t j = 0; j < jmax; ++j)
            for (int64_t k = 0; k < jmax; ++k) {
                if (j == k) continue;
                cplx acc(0, 0);
                for (int64_t a = 1; a < p; ++a)
                    acc += ctx.mult_character(j, a) * std::conj(ctx.mult_character(k, a));
                ortho = std::max(ortho, std::abs(acc));
            }
        c.hard("character-orthogonality", p, ortho < 1e-9 * p, ortho);
    }
}

void verify_charsums(Collector c, const std::vector<int64_t>& primes) {
    std::mt19937_64 rng(default_seed());
    for (int64_t p : primes) {
        PrimeContext ctx = make_context(p);
        double gauss_err = 0;
        for (int64_t j = 1; j < p - 1; ++j)
            gauss_err = std::max(gauss_err,
                                 std::abs(std::abs(gauss_sum(ctx, j)) - std::sqrt((double)p)) /
                                     std::sqrt((double)p));
        c.hard("gauss-modulus", p, gauss_err < 1e-8, gauss_err);
        cplx gchi = gauss_sum(ctx, (p - 1) / 2);
        c.hard("gauss-chi-real-sqrt", p,
               std::abs(gchi - cplx(std::sqrt((double)p), 0)) < 1e-8, gchi.real());

        KloostermanTable k2 = build_kloosterman(ctx, 2);
        double rewrite_err = 0, k2_imag = 0;
        for (int64_t a = 1; a < p; ++a) {
            rewrite_err = std::max(rewrite_err, std::abs(kloosterman_rewrite_lhs(ctx, a) -
                                                         k2.at(ctx.mul(a, a))));
            k2_imag = std::max(k2_imag, std::abs(k2.at(a).imag()));
        }
        c.hard("kloosterman-rewrite", p, rewrite_err < 1e-9, rewrite_err);
        c.hard("kloosterman-k2-real", p, k2_imag < 1e-9, k2_imag);

        if (p <= 31) {
            cplx s2(0, 0), s3(0, 0);
            for (int64_t a = 1; a < p; ++a) s2 += k2.at(a);
            KloostermanTable k3 = build_kloosterman(ctx, 3);
            for (int64_t a = 1; a < p; ++a) s3 += k3.at(a);
            c.hard("kloosterman-total-sum", p,
                   std::abs(s2 - cplx(1, 0)) < 1e-8 && std::abs(s3 + cplx(1, 0)) < 1e-8,
                   std::abs(s2 - cplx(1, 0)));
            double conv_err = 0;
            for (int64_t a = 1; a < p; ++a)
                conv_err = std::max(conv_err, std::abs(k3.at(a) - kloosterman(ctx, 3, a)));
            c.hard("kloosterman-k3-convolution", p, conv_err < 1e-9, conv_err);
        }

        double tw_max_ratio = 0;
        for (int64_t j = 1; j < p - 1; ++j)
            tw_max_ratio = std::max(tw_max_ratio, std::abs(twisted_moment(ctx, j, k2)) /
                                                      (2.0 * std::pow((double)p, 1.5)));
        c.hard("twisted-moment-2p32", p, tw_max_ratio <= 1.0 + 1e-9, tw_max_ratio);

        cplx cs0 = charsum_pair(ctx, 0);
        c.hard("charsum-pair-trivial", p, std::abs(cs0 - cplx(1, 0)) < 1e-6, cs0.real());
        double cs_ratio = 0;
        for (int64_t j = 1; j < p - 1; ++j)
            cs_ratio = std::max(cs_ratio, std::abs(charsum_pair(ctx, j)) / (2.0 * p));
        c.hard("charsum-pair-2p", p, cs_ratio <= 1.0 + 1e-9, cs_ratio);

        // Weil bound: exhaustive cubics at small p, random degree <= 6 beyond.
        if (p <= 31) {
            bool all_hold = true;
            for (int64_t c3 = 1; c3 < p && all_hold; ++c3)
                for (int64_t c2 = 0; c2 < p && all_hold; ++c2)
                    for (int64_t c1 = 0; c1 < p && all_hold; ++c1)
                        for (int64_t c0 = 0; c0 < p; ++c0) {
                            WeilCheck w = weil_check(ctx, {c0, c1, c2, c3});
                            if (w.bound_applicable && !w.bound_holds) {
                                all_hold = false;
                                break;
                            }
                        }
            c.hard("weil-cubics-exhaustive", p, all_hold, 0);
        }
        if (p <= 97) {
            bool all_hold = true;
            int tested = 0;
            while (tested < 1000) {
                int deg = 1 + (int)(rng() % 6);
                std::vector<int64_t> f(deg + 1);
                for (auto& v : f) v = (int64_t)(rng() % p);
                if (f[deg] == 0) f[deg] = 1;
                WeilCheck w = weil_check(ctx, f);
                if (!w.bound_applicable) continue;
                ++tested;
                if (!w.bound_holds) { all_hold = false; break; }
            }
            c.hard("weil-random-deg6", p, all_hold, (double)tested);
        }

        // Correlation sums: only the measured ratio is recorded.
        if (p <= 149) {
            double worst = 0;
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<int64_t> as(4);
                for (auto& a : as) a = 1 + (int64_t)(rng() % (p - 1));
                as[3] = as[2];  // force an element of odd multiplicity among a0,a1
                if (as[0] == as[1]) as[1] = (as[1] % (p - 1)) + 1;
                cplx corr = kloosterman_correlation(ctx, k2, as);
                worst = std::max(worst, std::abs(corr) / std::pow((double)p, 2.5));
            }
            c.soft("kloosterman-corr-ratio-p52", p, worst, "logged");
        }
    }
}

void verify_graph(Collector c, const std::vector<int64_t>& primes) {
    std::mt19937_64 rng(default_seed());
    for (int64_t p : primes) {
        PaleyGraph g = build_paley(p);
        Eigen::MatrixXi s = g.seidel_matrix();
        Eigen::MatrixXi want = (int)p * Eigen::MatrixXi::Identity(p, p) -
                               Eigen::MatrixXi::Ones(p, p);
        c.hard("seidel-square-identity", p, (s * s - want).cwiseAbs().maxCoeff() == 0, 0);

        StrongRegularity sr = strong_regularity(g);
        c.hard("strong-regularity", p, sr.holds && sr.lambda == (p - 5) / 4, (double)sr.lambda);

        Spectra sp = spectra(g);
        double rp = std::sqrt((double)p);
        double spec_err = std::abs(sp.adjacency_eigs(p - 1) - (p - 1) / 2.0);
        spec_err = std::max(spec_err, std::abs(sp.seidel_eigs(p - 1) - rp));
        spec_err = std::max(spec_err, std::abs(sp.seidel_eigs(0) + rp));
        c.hard("spectra-closed-form", p, spec_err < 1e-8 * p, spec_err);

        if (p <= 61) {
            int64_t nr = 0;
            for (int64_t a = 2; a < p; ++a)
                if (g.ctx().legendre(a) == -1) { nr = a; break; }
            bool selfc = true;
            for (int64_t a = 0; a < p && selfc; ++a)
                for (int64_t b = a + 1; b < p; ++b)
                    if (g.adjacent(nr * a % p, nr * b % p) == g.adjacent(a, b)) {
                        selfc = false;
                        break;
                    }
            c.hard("self-complementary", p, selfc, 0);
        }

        bool autom = true;
        for (int trial = 0; trial < 100 && autom; ++trial) {
            int64_t a = 1 + (int64_t)(rng() % (p - 1));
            if (g.ctx().legendre(a) != 1) continue;
            int64_t b = (int64_t)(rng() % p);
            for (int64_t x = 0; x < p && autom; ++x)
                for (int64_t y = x + 1; y < p; ++y)
                    if (g.adjacent(x, y) != g.adjacent((a * x + b) % p, (a * y + b) % p)) {
                        autom = false;
                        break;
                    }
        }
        c.hard("automorphisms", p, autom, 0);

        if (p <= 250) {
            int omega = clique_number(g);
            c.hard("clique-floor-and-ceiling", p,
                   omega >= 0.5 * std::log2((double)p) && omega <= rp, (double)omega);
        }
    }
}

void verify_graphmx(Collector c, const std::vector<int64_t>& primes) {
    std::mt19937_64 rng(default_seed());
    for (int64_t p : primes) {
        PaleyGraph g = build_paley(p);
        if (p <= 17) {
            // exhaustive zero-pattern audit and dense-vs-structured agreement
            PairIndexing idx(p);
            MatrixXd s = g.seidel_matrix_d();
            bool patterns_ok = true;
            VectorXd x(idx.size()), y;
            for (int64_t i = 0; i < idx.size(); ++i)
                x(i) = (double)(rng() % 2000) / 1000.0 - 1.0;
            double matvec_err = 0;
            for (Shape shape : all_shapes()) {
                if (shape == Shape::DIAMOND) continue;
                GraphMatrix m = build_graph_matrix(g, shape);
                ShapeOp op(g, shape);
                op.apply(x, y);
                matvec_err = std::max(matvec_err,
                                      (y - m.data * x).cwiseAbs().maxCoeff());
                std::string nm = shape_name(shape);
                for (int64_t r = 0; r < idx.size() && patterns_ok; ++r) {
                    auto [ra, rb] = idx.pairs[r];
                    for (int64_t cc = 0; cc < idx.size(); ++cc) {
                        auto [ca, cb] = idx.pairs[cc];
                        int inter = (int)(ra == ca) + (int)(ra == cb) + (int)(rb == ca) +
                                    (int)(rb == cb);
                        int want;
                        if (nm[0] == 'T')
                            want = (nm[1] == '3') ? 1 : 0;
                        else
                            want = (nm[1] == '3') ? 2 : (nm[1] == '4' ? 1 : 0);
                        if (inter != want && m.data(r, cc) != 0.0) {
                            patterns_ok = false;
                            break;
                        }
                    }
                }
            }
            c.hard("zero-patterns-exhaustive", p, patterns_ok, 0);
            c.hard("structured-matvec-vs-dense", p, matvec_err < 1e-8 * p, matvec_err);
        }
        if (p <= 61) {
            c.hard("t301-decomposition", p, exact_decomposition_check(g, Shape::T301) < 1e-8,
                   exact_decomposition_check(g, Shape::T301));
            c.hard("t401-decomposition", p, exact_decomposition_check(g, Shape::T401) < 1e-8,
                   exact_decomposition_check(g, Shape::T401));
            FkParams al = theorem_alphas(0.05, p);
            SchurResiduals res = schur_decomposition_residual(g, al);
            c.hard("schur-h22-residual", p, res.h22 < 1e-8, res.h22);
            c.hard("schur-h21h12-residual", p, res.h21h12 < 1e-8, res.h21h12);
        }
        GraphMatrix dm = diamond_matrix(g);
        double dn = spectral_norm(dm, 1e-8).value;
        c.hard("diamond-norm-exact", p,
               std::abs(dn - (double)(p - 1) * (p - 3)) < 1e-6 * p * p, dn);
    }

    // Norm-exponent fits over the requested range (need >= 3 primes).
    std::vector<int64_t> fit_primes;
    for (int64_t p : primes)
        if (p >= 13 && p <= 149) fit_primes.push_back(p);
    if (fit_primes.size() >= 3) {
        for (Shape shape : all_shapes()) {
            if (shape == Shape::DIAMOND) continue;
            std::vector<SweepRecord> recs;
            for (int64_t p : fit_primes) {
                NormResult nr = shape_norm(build_paley(p), shape, 1e-6);
                recs.push_back({p, shape_name(shape), nr.value, 0.0,
                                nr.converged ? "ok" : "capped"});
            }
            try {
                PowerFit fit = fit_power_law(recs);
                double budget = shape_norm_exponent(shape) + 0.1;
                bool flat = shape_norm_exponent(shape) == 0.0;
                // constant-norm shapes fit b ~ 0 with tiny noise
                c.hard("norm-exponent-" + shape_name(shape), 0,
                       flat ? std::abs(fit.b) < 0.05 : fit.b <= budget, fit.b);
            } catch (const std::exception&) {
                c.soft("norm-exponent-" + shape_name(shape), 0, 0, "not enough points");
            }
        }
        // Restricted norms collapse to O(sqrt p): fitted exponent <= 0.6.
        struct RestrictedCase { Shape s; int i, j; const char* name; };
        for (auto rc : {RestrictedCase{Shape::T421, 2, -1, "p2-T421"},
                        RestrictedCase{Shape::T422, -1, 2, "T422-p2"},
                        RestrictedCase{Shape::T411, 2, -1, "p2-T411"},
                        RestrictedCase{Shape::T411, -1, 2, "T411-p2"}}) {
            std::vector<SweepRecord> recs;
            for (int64_t p : fit_primes) {
                PaleyGraph g = build_paley(p);
                // i or j = -1 means "no projector on that side": combine all
                double v = 0;
                for (int k = 0; k < 3; ++k) {
                    int i = rc.i < 0 ? k : rc.i;
                    int j = rc.j < 0 ? k : rc.j;
                    v = std::max(v, restricted_norm(g, rc.s, i, j, 1e-6).value);
                }
                recs.push_back({p, rc.name, v, 0.0, "ok"});
            }
            PowerFit fit = fit_power_law(recs);
            c.hard(std::string("restricted-exponent-") + rc.name, 0, fit.b <= 0.6, fit.b);
        }
    }
}

void verify_blockcirc(Collector c, const std::vector<int64_t>& primes) {
    for (int64_t p : primes) {
        PaleyGraph g = build_paley(p);
        const PrimeContext& ctx = g.ctx();
        BlockCirculantForm form = reorder_t441(g);

        // B^{-i} = transpose of B^{i}
        double transp = 0;
        for (int64_t i = 1; i < p - 1; ++i)
            transp = std::max(transp,
                              (form.blocks[p - 1 - i] - form.blocks[i].transpose()).norm());
        c.hard("block-transpose-symmetry", p, transp == 0.0, transp);

        if (p <= 17) {
            // entrywise reassembly against the ordered-pair lift
            bool ok = true;
            for (int64_t x = 0; x < p && ok; ++x)
                for (int64_t y = 0; y < p; ++y) {
                    if (x == y) continue;
                    for (int64_t z = 0; z < p && ok; ++z)
                        for (int64_t w = 0; w < p; ++w) {
                            if (z == w) continue;
                            auto [i, a] = form.coords(x, y, ctx);
                            auto [j, b] = form.coords(z, w, ctx);
                            int64_t blk = ((j - i) % (p - 1) + (p - 1)) % (p - 1);
                            if (form.blocks[blk](a, b) != t441_tilde_entry(ctx, x, y, z, w)) {
                                ok = false;
                                break;
                            }
                        }
                }
            c.hard("reassembly-exact", p, ok, 0);
        }

        auto slices = spectral_slices(form);
        double herm = 0, ones_resid = 0, ones_bound = 0;
        VectorXcd one = VectorXcd::Ones(p);
        for (const auto& sl : slices) {
            herm = std::max(herm, (sl.matrix - sl.matrix.adjoint()).norm());
            VectorXcd mv = sl.matrix * one;
            cplx lam = mv.sum() / (double)p;
            ones_resid = std::max(ones_resid, (mv - lam * one).norm());
            ones_bound = std::max(ones_bound, std::abs(lam) / (2.0 * p));
        }
        c.hard("slices-hermitian", p, herm < 1e-10 * p, herm);
        c.hard("slices-ones-eigenvector", p, ones_resid < 1e-8 * p, ones_resid);
        c.hard("slices-ones-eig-2p", p, ones_bound <= 1.0 + 1e-9, ones_bound);

        auto spectra_list = slice_spectra(form);
        if (p <= 31) {
            // multiset union equals the spectrum of the ordered-pair lift
            MatrixXd tilde(p * (p - 1), p * (p - 1));
            std::vector<std::pair<int64_t, int64_t>> opairs;
            for (int64_t x = 0; x < p; ++x)
                for (int64_t y = 0; y < p; ++y)
                    if (x != y) opairs.push_back({x, y});
            for (size_t r = 0; r < opairs.size(); ++r)
                for (size_t cc = 0; cc < opairs.size(); ++cc)
                    tilde(r, cc) = t441_tilde_entry(ctx, opairs[r].first, opairs[r].second,
                                                    opairs[cc].first, opairs[cc].second);
            VectorXd tev = sym_eigenvalues(tilde);
            std::vector<double> pooled;
            for (const auto& ev : spectra_list)
                for (int64_t i = 0; i < ev.size(); ++i) pooled.push_back(ev(i));
            std::sort(pooled.begin(), pooled.end());
            double norm_t = std::max(std::abs(tev(0)), std::abs(tev(tev.size() - 1)));
            double merr = 0;
            for (int64_t i = 0; i < tev.size(); ++i)
                merr = std::max(merr, std::abs(tev(i) - pooled[i]));
            c.hard("spectrum-union", p, merr < 1e-6 * std::max(1.0, norm_t), merr);

            // removing the all-ones eigenvalue leaves a common multiset
            double shared_err = 0;
            std::vector<std::vector<double>> rest;
            for (const auto& sl : slices) {
                VectorXcd mv = sl.matrix * one;
                cplx lam = mv.sum() / (double)p;
                VectorXd ev = herm_eigenvalues(sl.matrix);
                std::vector<double> v(ev.data(), ev.data() + ev.size());
                // drop the entry closest to the all-ones eigenvalue
                size_t drop = 0;
                for (size_t i = 1; i < v.size(); ++i)
                    if (std::abs(v[i] - lam.real()) < std::abs(v[drop] - lam.real())) drop = i;
                v.erase(v.begin() + drop);
                std::sort(v.begin(), v.end());
                rest.push_back(std::move(v));
            }
            for (size_t sidx = 1; sidx < rest.size(); ++sidx)
                for (size_t i = 0; i < rest[0].size(); ++i)
                    shared_err = std::max(shared_err, std::abs(rest[sidx][i] - rest[0][i]));
            c.hard("slices-shared-spectrum", p, shared_err < 1e-6 * std::max(1.0, norm_t),
                   shared_err);

            // || T~ || = 2 || T441 ||
            double tilde_norm = std::max(std::abs(tev(0)), std::abs(tev(tev.size() - 1)));
            double t441n =
                spectral_norm(build_graph_matrix(g, Shape::T441), 1e-8).value;
            c.hard("tilde-norm-doubling", p,
                   std::abs(tilde_norm - 2.0 * t441n) < 1e-6 * std::max(1.0, tilde_norm),
                   tilde_norm / t441n);
        }

        // charsum1 matrix: symmetry and closeness to the trivial slice
        MatrixXd t = charsum1_matrix(ctx);
        c.hard("charsum1-symmetric", p, (t - t.transpose()).norm() < 1e-12, 0);
        MatrixXd s_psi0 = form.blocks[0];
        for (int64_t i = 1; i < p - 1; ++i) s_psi0 += form.blocks[i];
        double entry_gap = (t - s_psi0).cwiseAbs().maxCoeff();
        c.hard("charsum1-vs-trivial-slice", p, entry_gap <= 1.0 + 1e-9, entry_gap);

        double ratio = t441_norm_via_slices(g) / (double)p;
        c.soft("t441-norm-over-p", p, ratio, "tracked; conjectured limit 1");
    }

    // fitted exponent of ||charsum1|| <= 1.35 over the range
    std::vector<SweepRecord> recs;
    for (int64_t p : primes) {
        if (p < 13 || p > 149) continue;
        PrimeContext ctx = make_context(p);
        VectorXd ev = sym_eigenvalues(charsum1_matrix(ctx));
        recs.push_back({p, "charsum1norm",
                        std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))), 0.0, "ok"});
    }
    if (recs.size() >= 3) {
        PowerFit fit = fit_power_law(recs);
        c.hard("charsum1-norm-exponent", 0, fit.b <= 1.35, fit.b);
    }
}

void verify_fk(Collector c, const std::vector<int64_t>& primes) {
    std::mt19937_64 rng(default_seed());
    for (int64_t p : primes) {
        PaleyGraph g = build_paley(p);
        FkParams al = theorem_alphas(0.05, p);
        c.hard("theorem-alpha-ratios", p,
               std::abs(al.a2 / (al.a1 * al.a1) - 4.0) < 1e-12 &&
                   std::abs(al.a4 / std::pow(al.a1, 4) - 512.0) < 1e-9,
               al.a1);

        if (p <= 61) {
            // entry audit of the assembled pseudomoment matrix
            PseudomomentMatrix m = assemble_M(g, al);
            CliqueBasis basis(g);
            bool audit = true;
            for (int64_t i = 0; i < p && audit; ++i) {
                if (m.data(1 + i, 1 + i) != al.a1) audit = false;
            }
            for (int64_t e = 0; e < (int64_t)basis.edges.size() && audit; ++e) {
                if (m.data(1 + p + e, 1 + p + e) != al.a2) audit = false;
                auto [a, b] = basis.edges[e];
                for (int64_t f = 0; f < (int64_t)basis.edges.size(); ++f) {
                    auto [cc, d] = basis.edges[f];
                    if (a == cc || a == d || b == cc || b == d) continue;
                    bool k4 = g.adjacent(a, cc) && g.adjacent(a, d) && g.adjacent(b, cc) &&
                              g.adjacent(b, d);
                    double want = k4 ? al.a4 : 0.0;
                    if (m.data(1 + p + e, 1 + p + f) != want) {
                        audit = false;
                        break;
                    }
                }
            }
            c.hard("assemble-m-audit", p, audit, 0);

            HBlocks h = assemble_H(g, al);
            MatrixXd a_mat = g.adjacency_matrix().cast<double>();
            MatrixXd want_h11 = al.a1 * MatrixXd::Identity(p, p) + al.a2 * a_mat -
                                al.a1 * al.a1 * MatrixXd::Ones(p, p);
            c.hard("h11-formula", p, (h.h11 - want_h11).cwiseAbs().maxCoeff() < 1e-14, 0);
            VectorXd h11_eigs = sym_eigenvalues(h.h11);
            double rp = std::sqrt((double)p);
            double e_top = al.a1 + (p - 1) / 2.0 * al.a2 - p * al.a1 * al.a1;
            double e_plus = al.a1 + (-1 + rp) / 2.0 * al.a2;
            double e_minus = al.a1 + (-1 - rp) / 2.0 * al.a2;
            std::vector<double> want = {e_top, e_plus, e_minus};
            std::sort(want.begin(), want.end());
            bool eig_ok = std::abs(h11_eigs(0) - want[0]) < 1e-10 &&
                          std::abs(h11_eigs(p - 1) - want[2]) < 1e-10;
            c.hard("h11-eigenvalues", p, eig_ok, h11_eigs(0));

            c.hard("n-vs-h-restriction", p, h_vs_n_residual(g, al) < 1e-10,
                   h_vs_n_residual(g, al));

            double mineig = min_eigenvalue(assemble_M(g, theorem_alphas(0.01, p)).data).value;
            c.hard("construction-psd-at-c001", p, mineig >= -1e-8, mineig);

            bool sound = true;
            for (int t = 0; t < 3 && sound; ++t) {
                FkParams r{0.002 + 0.002 * (double)(rng() % 5), 0, 0, 0};
                r.a2 = 4 * r.a1 * r.a1;
                r.a3 = 8 * std::pow(r.a1, 3);
                r.a4 = 512 * std::pow(r.a1, 4);
                sound = schur_chain_sound(g, r);
            }
            c.hard("schur-chain-soundness", p, sound, 0);
        }

        PseudomomentSumReport sums = pseudomoment_sum_checks(g, al);
        c.hard("pseudomoment-sums-exact", p, sums.exact_identities_hold, sums.triangle_sum);
        c.soft("pseudomoment-quad-deviation", p, sums.quad_deviation_ratio, "vs p^{3/2} a4");
        if (p == 13)
            c.hard("pseudomoment-quad-deviation-13", p, sums.quad_deviation_ratio <= 10.0,
                   sums.quad_deviation_ratio);

        if (p <= 31) {
            UQuadraticReport uq = u_quadratic_forms(g);
            c.hard("u-closed-form-projection", p, uq.closed_form_residual < 1e-8,
                   uq.closed_form_residual);
            c.soft("u-low-energy", p, uq.u_low_norm2, "||(P0+P1)u||^2");
            if (p == 13) c.hard("u-low-energy-13", p, uq.u_low_norm2 < 5.0, uq.u_low_norm2);
            c.hard("t441-charsum-identity", p, uq.identity_rel_err < 1e-6,
                   uq.identity_rel_err);
            c.hard("t441-quadform-relation", p,
                   uq.relation_residual < 1e-6 * std::max(1.0, std::abs(uq.u_t441_u)),
                   uq.relation_residual);
        }
    }

    // u-quadratic-form exponent fits over the range
    std::vector<int64_t> fit_primes;
    for (int64_t p : primes)
        if (p >= 13 && p <= 97) fit_primes.push_back(p);
    if (fit_primes.size() >= 3) {
        const char* names[6] = {"T301", "T401", "T421", "T422", "T411", "T441"};
        double budgets[6] = {2.1, 2.1, 2.6, 2.6, 2.6, 3.1};
        std::vector<std::vector<SweepRecord>> recs(6);
        for (int64_t p : fit_primes) {
            UQuadraticReport uq = u_quadratic_forms(build_paley(p));
            for (int k = 0; k < 6; ++k)
                recs[k].push_back({p, names[k], std::abs(uq.quad_forms[k]), 0.0, "ok"});
        }
        for (int k = 0; k < 6; ++k) {
            PowerFit fit = fit_power_law(recs[k]);
            c.hard(std::string("u-quadform-exponent-") + names[k], 0, fit.b <= budgets[k],
                   fit.b);
        }
    }

    // FK4 optimizer: sandwich and cross-check against the general SDP solver.
    for (int64_t p : primes) {
        if (p > 17) continue;
        PaleyGraph g = build_paley(p);
        FkResult fk = fk4_value(g, 1e-3);
        double omega = clique_number(g);
        c.hard("fk4-sandwich", p,
               fk.value >= omega - 1e-3 && fk.value <= std::sqrt((double)p) + 1e-3, fk.value);
        SdpSolution fk_sdp = solve(build_fk4(g), 5e-6, 60000);
        c.hard("fk4-vs-sdp", p, std::abs(fk.value - fk_sdp.value) <= 2e-3 + fk.upper - fk.lower,
               std::abs(fk.value - fk_sdp.value));
        FkParams b = fk.best_alpha;
        double rp = std::sqrt((double)p);
        c.soft("alpha-ratio-a2a1", p, b.a1 > 0 ? b.a2 * rp / b.a1 : 0, "tracked");
        c.soft("alpha-ratio-a3a2", p, b.a2 > 0 ? b.a3 * rp / b.a2 : 0, "tracked");
        c.soft("alpha-ratio-a4a3", p, b.a3 > 0 ? b.a4 * rp / b.a3 : 0, "tracked");
    }
}

void verify_sdp(Collector c, const std::vector<int64_t>& primes) {
    // correlation-matrix extreme point
    {
        SdpProblem prob;
        prob.dim = 2;
        prob.objective = MatrixXd::Zero(2, 2);
        prob.objective(0, 1) = prob.objective(1, 0) = 0.5;
        prob.pinned.push_back({{0, 0}, 1.0});
        prob.pinned.push_back({{1, 1}, 1.0});
        SdpSolution s = solve(prob, 1e-7, 20000);
        c.hard("extreme-point-2x2", 0, std::abs(s.value - 1.0) < 1e-4, s.value);
    }
    // complete graph K3: theta-bar is 3
    {
        Eigen::MatrixXi k3 = Eigen::MatrixXi::Ones(3, 3) - Eigen::MatrixXi::Identity(3, 3);
        SdpSolution s = solve(build_sos2(k3), 1e-7, 50000);
        c.hard("sos2-complete-k3", 0, std::abs(s.value - 3.0) < 1e-4, s.value);
    }
    for (int64_t p : primes) {
        if (p > 149) continue;
        SdpSolution s = solve(build_sos2(build_paley(p)), 2e-6, 200000);
        double err = std::abs(s.value - std::sqrt((double)p));
        c.hard("sos2-sqrt-p", p, err < 1e-3, s.value);
    }
    for (int64_t p : primes) {
        if (p > 29) continue;  // keep the suite quick; acceptance covers p <= 61
        PaleyGraph g = build_paley(p);
        SdpSolution s4 = solve(build_sos4(g), 5e-6, 60000);
        SdpSolution s2 = solve(build_sos2(g), 2e-6, 200000);
        double omega = clique_number(g);
        c.hard("hierarchy", p,
               s4.value <= s2.value + 2e-3 && s4.value >= omega - 2e-3, s4.value);
        // self-consistency under different iteration limits
        SdpSolution s4b = solve(build_sos4(g), 5e-6, 15000);
        c.hard("sos4-self-consistency", p, std::abs(s4.value - s4b.value) < 2e-3,
               std::abs(s4.value - s4b.value));
        // monotone residual trend: residual at 10k iterations <= at 1k
        SdpOptions o1;
        o1.tol = 0;
        o1.max_iter = 1000;
        SdpOptions o10 = o1;
        o10.max_iter = 10000;
        if (p == primes.front()) {
            SdpSolution r1 = solve(build_sos4(g), o1);
            SdpSolution r10 = solve(build_sos4(g), o10);
            c.hard("residual-trend", p,
                   std::max(r10.primal_residual, r10.dual_residual) <=
                       std::max(r1.primal_residual, r1.dual_residual) + 1e-12,
                   r10.primal_residual);
        }
    }
}

}  // namespace

VerifyReport run_verify(const std::string& suite, int64_t p_min, int64_t p_max) {
    VerifyReport rep;
    std::vector<int64_t> primes = paley_primes(p_min, p_max);
    if (primes.empty()) {
        rep.warnings.push_back("no primes = 1 (mod 4) in range [" + std::to_string(p_min) +
                               ", " + std::to_string(p_max) + "]");
        return rep;
    }
    auto want = [&](const char* s) { return suite == s || suite == "all"; };
    if (want("field")) verify_field({rep, "field"}, primes);
    if (want("charsums")) verify_charsums({rep, "charsums"}, primes);
    if (want("graph")) verify_graph({rep, "graph"}, primes);
    if (want("graphmx")) verify_graphmx({rep, "graphmx"}, primes);
    if (want("blockcirc")) verify_blockcirc({rep, "blockcirc"}, primes);
    if (want("fk")) verify_fk({rep, "fk"}, primes);
    if (want("sdp")) verify_sdp({rep, "sdp"}, primes);
    if (!want("field") && !want("charsums") && !want("graph") && !want("graphmx") &&
        !want("blockcirc") && !want("fk") && !want("sdp"))
        throw std::invalid_argument("unknown suite: " + suite);
    return rep;
}

void print_report(const VerifyReport& rep, std::ostream& os) {
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
    for (const auto& ck : rep.checks) {
        os << (ck.hard ? (ck.pass ? "[pass] " : "[FAIL] ") : "[info] ");
        os << ck.suite << "/" << ck.name;
        if (ck.p > 0) os << " (p=" << ck.p << ")";
        os << "  measured=" << std::setprecision(8) << ck.measured;
        if (!ck.note.empty()) os << "  " << ck.note;
        os << "\n";
    }
    int hard = 0, fail = 0;
    for (const auto& ck : rep.checks) {
        if (ck.hard) ++hard;
        if (ck.hard && !ck.pass) ++fail;
    }
    os << (fail == 0 ? "OK" : "FAILED") << ": " << hard - fail << "/" << hard
       << " hard checks passed\n";
}

}  // namespace paley
