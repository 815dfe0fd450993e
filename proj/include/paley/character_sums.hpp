#pragma once

#include "paley/prime_field.hpp"

namespace paley {

/// Kloosterman sums K_k(a) for every a in F_p^x, built once by multiplicative
/// convolution so that the twisted-moment sums can read the whole table.
struct KloostermanTable {
    int64_t p = 0;
    int k = 0;
    std::vector<cplx> values;  // values[a] for a = 0..p-1, values[0] unused

    cplx at(int64_t a) const { return values[a]; }
};

KloostermanTable build_kloosterman(const PrimeContext& ctx, int k);

/// K_k(a) for a single a.  k = 2 runs the O(p) defining sum; k = 3 the
/// O(p^2) double sum; larger k falls back to the convolution table.
cplx kloosterman(const PrimeContext& ctx, int k, int64_t a);

/// Gauss sum G(phi_j) = sum_x phi_j(x) e_p(x).
cplx gauss_sum(const PrimeContext& ctx, int64_t j);

struct WeilCheck {
    double sum = 0.0;          // sum_x chi(f(x)), exact integer in double
    int degree = 0;
    bool is_square_form = false;  // f = r * g(t)^2 over F_p
    bool bound_holds = false;     // |sum| <= d sqrt(p), meaningful when applicable
    bool bound_applicable = false;
};

/// Weil-bound check for chi(f(x)) sums; coeffs[i] multiplies t^i.
WeilCheck weil_check(const PrimeContext& ctx, const std::vector<int64_t>& coeffs);

/// sum_{a != 0} phi_j(a) K(a^2)^2 (twisted second moment of Kloosterman sums).
cplx twisted_moment(const PrimeContext& ctx, int64_t j);
cplx twisted_moment(const PrimeContext& ctx, int64_t j, const KloostermanTable& k2);

/// sum_{a != 0} phi_j(a) K_k(a)^s conj(K_k(a))^t.
cplx twisted_moment_general(const PrimeContext& ctx, int64_t j, int k, int s, int t);

/// sum_{x,y} chi(x(x+1)y(y+1)) phi_j(x-y); equals 1 for the trivial
/// character and is at most 2p in modulus otherwise.
cplx charsum_pair(const PrimeContext& ctx, int64_t j);

/// sum_x chi(x^2-1) e_p(2ax), which equals K(a^2) for a != 0.
cplx kloosterman_rewrite_lhs(const PrimeContext& ctx, int64_t a);

/// sum_x prod_i K_k(a_i x), the correlation sums whose bound is only
/// logged (no explicit constant in the source estimates).
cplx kloosterman_correlation(const PrimeContext& ctx, const KloostermanTable& table,
                             const std::vector<int64_t>& as);

}  // namespace paley
