#include "paley/character_sums.hpp"

#include <algorithm>
#include <cmath>

namespace paley {

KloostermanTable build_kloosterman(const PrimeContext& ctx, int k) {
    if (k < 2) throw std::invalid_argument("Kloosterman order must be >= 2");
    int64_t p = ctx.p();
    KloostermanTable table;
    table.p = p;
    table.k = k;
    // K_1(a) = e_p(a); each further order is one convolution over the
    // fibering x_1 ... x_k = a.
    std::vector<cplx> cur(p);
    for (int64_t a = 1; a < p; ++a) cur[a] = ctx.additive_character(a);
    for (int level = 2; level <= k; ++level) {
        std::vector<cplx> next(p, cplx(0, 0));
        for (int64_t a = 1; a < p; ++a) {
            cplx acc(0, 0);
            for (int64_t x = 1; x < p; ++x)
                acc += cur[ctx.mul(a, ctx.inverse(x))] * ctx.additive_character(x);
            next[a] = acc;
        }
        cur.swap(next);
    }
    table.values = std::move(cur);
    return table;
}

cplx kloosterman(const PrimeContext& ctx, int k, int64_t a) {
    a = ctx.reduce(a);
    if (a == 0) throw std::invalid_argument("Kloosterman sum requires a != 0");
    if (k < 2) throw std::invalid_argument("Kloosterman order must be >= 2");
    int64_t p = ctx.p();
    if (k == 2) {
        cplx acc(0, 0);
        for (int64_t x = 1; x < p; ++x)
            acc += ctx.additive_character(x + ctx.mul(a, ctx.inverse(x)));
        return acc;
    }
    if (k == 3) {
        cplx acc(0, 0);
        for (int64_t x = 1; x < p; ++x)
            for (int64_t y = 1; y < p; ++y)
                acc += ctx.additive_character(x + y + ctx.mul(a, ctx.inverse(ctx.mul(x, y))));
        return acc;
    }
    return build_kloosterman(ctx, k).at(a);
}

cplx gauss_sum(const PrimeContext& ctx, int64_t j) {
    cplx acc(0, 0);
    for (int64_t x = 1; x < ctx.p(); ++x)
        acc += ctx.mult_character(j, x) * ctx.additive_character(x);
    return acc;
}

namespace {

// Dense polynomial arithmetic over F_p, coefficients ascending.
using Poly = std::vector<int64_t>;

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mod(Poly a, const Poly& b, const PrimeContext& ctx) {
    a = trim(std::move(a));
    int64_t p = ctx.p();
    int64_t lead_inv = ctx.inverse(b.back());
    while ((int)a.size() >= (int)b.size() && !a.empty()) {
        int64_t c = ctx.mul(a.back(), lead_inv);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = ((a[shift + i] - (__int128)c * b[i]) % p + p) % p;
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, const PrimeContext& ctx) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(a, b, ctx);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        int64_t inv = ctx.inverse(a.back());
        for (auto& c : a) c = ctx.mul(c, inv);
    }
    return a;
}

Poly poly_derivative(const Poly& f, const PrimeContext& ctx) {
    Poly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(ctx.mul((int64_t)i, f[i]));
    return trim(std::move(d));
}

// Exact quotient f / g (asserts divisibility via zero remainder).
Poly poly_divexact(Poly f, const Poly& g, const PrimeContext& ctx) {
    f = trim(std::move(f));
    int64_t p = ctx.p();
    if (f.empty()) return {};
    Poly q(f.size() - g.size() + 1, 0);
    int64_t lead_inv = ctx.inverse(g.back());
    while ((int)f.size() >= (int)g.size() && !f.empty()) {
        int64_t c = ctx.mul(f.back(), lead_inv);
        size_t shift = f.size() - g.size();
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i)
            f[shift + i] = ((f[shift + i] - (__int128)c * g[i]) % p + p) % p;
        f = trim(std::move(f));
    }
    if (!f.empty()) throw std::logic_error("poly_divexact: not divisible");
    return q;
}

// Monic f is a perfect square iff every irreducible factor has even
// multiplicity.  With deg f < p the radical is f / gcd(f, f'); peel the
// radical squared and recurse, which fails exactly when some multiplicity
// is odd.
bool monic_is_square(Poly f, const PrimeContext& ctx) {
    f = trim(std::move(f));
    if ((int)f.size() - 1 <= 0) return true;
    if (((int)f.size() - 1) % 2 != 0) return false;
    Poly d = poly_derivative(f, ctx);
    if (d.empty()) throw std::logic_error("degree >= p unsupported in square-form check");
    Poly g = poly_gcd(f, d, ctx);
    Poly radical = poly_divexact(f, g, ctx);  // product of distinct factors
    // radical^2 must divide f, else some factor is simple (odd multiplicity).
    Poly rad2(2 * radical.size() - 1, 0);
    for (size_t a = 0; a < radical.size(); ++a)
        for (size_t b = 0; b < radical.size(); ++b)
            rad2[a + b] = (rad2[a + b] + ctx.mul(radical[a], radical[b])) % ctx.p();
    Poly rem = poly_mod(f, rad2, ctx);
    if (!rem.empty()) return false;
    return monic_is_square(poly_divexact(f, rad2, ctx), ctx);
}

}  // namespace

WeilCheck weil_check(const PrimeContext& ctx, const std::vector<int64_t>& coeffs) {
    Poly f;
    for (int64_t c : coeffs) f.push_back(ctx.reduce(c));
    f = trim(std::move(f));
    if (f.empty()) throw std::invalid_argument("zero polynomial");

    WeilCheck out;
    out.degree = (int)f.size() - 1;

    int64_t p = ctx.p();
    long long s = 0;
    for (int64_t x = 0; x < p; ++x) {
        __int128 v = 0;
        for (int i = (int)f.size() - 1; i >= 0; --i) v = (v * x + f[i]) % p;
        s += ctx.legendre((int64_t)v);
    }
    out.sum = (double)s;

    Poly monic = f;
    int64_t inv_lead = ctx.inverse(monic.back());
    for (auto& c : monic) c = ctx.mul(c, inv_lead);
    out.is_square_form = monic_is_square(monic, ctx);
    out.bound_applicable = !out.is_square_form;
    if (out.bound_applicable)
        out.bound_holds = std::abs(out.sum) <= out.degree * std::sqrt((double)p) + 1e-9;
    return out;
}

cplx twisted_moment(const PrimeContext& ctx, int64_t j, const KloostermanTable& k2) {
    if (j == 0) throw std::invalid_argument("twisted moment needs a non-trivial character");
    cplx acc(0, 0);
    for (int64_t a = 1; a < ctx.p(); ++a) {
        cplx k = k2.at(ctx.mul(a, a));
        acc += ctx.mult_character(j, a) * k * k;
    }
    return acc;
}

cplx twisted_moment(const PrimeContext& ctx, int64_t j) {
    return twisted_moment(ctx, j, build_kloosterman(ctx, 2));
}

cplx twisted_moment_general(const PrimeContext& ctx, int64_t j, int k, int s, int t) {
    if (j == 0) throw std::invalid_argument("twisted moment needs a non-trivial character");
    if (k < 2 || s < 0 || t < 0 || s + t < 1) throw std::invalid_argument("bad (k,s,t)");
    KloostermanTable table = build_kloosterman(ctx, k);
    cplx acc(0, 0);
    for (int64_t a = 1; a < ctx.p(); ++a) {
        cplx v(1, 0);
        cplx ka = table.at(a);
        for (int i = 0; i < s; ++i) v *= ka;
        for (int i = 0; i < t; ++i) v *= std::conj(ka);
        acc += ctx.mult_character(j, a) * v;
    }
    return acc;
}

cplx charsum_pair(const PrimeContext& ctx, int64_t j) {
    int64_t p = ctx.p();
    if (j == 0) {
        // Trivial character taken as 1 on all of F_p (including 0), so the
        // sum factors as (sum_x chi(x(x+1)))^2 = 1.
        double s = 0;
        for (int64_t x = 0; x < p; ++x) s += ctx.legendre(ctx.mul(x, x + 1));
        return cplx(s * s, 0);
    }
    cplx acc(0, 0);
    for (int64_t x = 0; x < p; ++x) {
        int cx = ctx.legendre(ctx.mul(x, x + 1));
        if (cx == 0) continue;
        for (int64_t y = 0; y < p; ++y) {
            int cy = ctx.legendre(ctx.mul(y, y + 1));
            if (cy == 0) continue;
            acc += (double)(cx * cy) * ctx.mult_character(j, x - y);
        }
    }
    return acc;
}

cplx kloosterman_rewrite_lhs(const PrimeContext& ctx, int64_t a) {
    cplx acc(0, 0);
    for (int64_t x = 0; x < ctx.p(); ++x)
        acc += (double)ctx.legendre(x * x - 1) * ctx.additive_character(2 * ctx.mul(a, x));
    return acc;
}

cplx kloosterman_correlation(const PrimeContext& ctx, const KloostermanTable& table,
                             const std::vector<int64_t>& as) {
    cplx acc(0, 0);
    for (int64_t x = 1; x < ctx.p(); ++x) {
        cplx v(1, 0);
        for (int64_t a : as) v *= table.at(ctx.mul(a, x));
        acc += v;
    }
    return acc;
}

}  // namespace paley
