#include "doctest.h"
#include "paley/character_sums.hpp"

#include <cmath>

using namespace paley;

TEST_CASE("gauss sums") {
    PrimeContext ctx = make_context(13);
    // G(chi) = sqrt(p) exactly (real, positive) when p = 1 mod 4
    cplx g = gauss_sum(ctx, 6);
    CHECK(g.real() == doctest::Approx(std::sqrt(13.0)).epsilon(1e-9));
    CHECK(std::abs(g.imag()) < 1e-9);
    // trivial character: sum_{x != 0} e_p(x) = -1
    CHECK(std::abs(gauss_sum(ctx, 0) - cplx(-1, 0)) < 1e-9);
    // |G(phi_j)| = sqrt(p) for every nontrivial j
    for (int64_t j = 1; j < 12; ++j)
        CHECK(std::abs(gauss_sum(ctx, j)) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-8));
}

TEST_CASE("gauss modulus across primes up to 200") {
    for (int64_t p : paley_primes(5, 200)) {
        PrimeContext ctx = make_context(p);
        for (int64_t j : {int64_t(1), (p - 1) / 2, p - 2})
            CHECK(std::abs(gauss_sum(ctx, j)) ==
                  doctest::Approx(std::sqrt((double)p)).epsilon(1e-8));
    }
}

TEST_CASE("kloosterman K_2 small value oracle") {
    // p=5, a=1: x + x^{-1} over x=1..4 is 2,0,0,3 mod 5
    PrimeContext ctx = make_context(5);
    cplx k = kloosterman(ctx, 2, 1);
    double expect = 2.0 + 2.0 * std::cos(4.0 * M_PI / 5.0);
    CHECK(k.real() == doctest::Approx(expect).epsilon(1e-9));
    CHECK(std::abs(k.imag()) < 1e-9);
    CHECK(expect == doctest::Approx(0.381966).epsilon(1e-5));
    CHECK_THROWS(kloosterman(ctx, 2, 0));
    CHECK_THROWS(kloosterman(ctx, 1, 1));
}

TEST_CASE("kloosterman table agrees with direct sums and is real for k=2") {
    for (int64_t p : {13, 17, 29, 31}) {
        PrimeContext ctx = make_context(p);
        KloostermanTable t2 = build_kloosterman(ctx, 2);
        for (int64_t a = 1; a < p; ++a) {
            CHECK(std::abs(t2.at(a) - kloosterman(ctx, 2, a)) < 1e-9);
            CHECK(std::abs(t2.at(a).imag()) < 1e-9);
        }
        // sum over a of K_k(a) = (-1)^k since sum_{x != 0} e_p(x) = -1
        cplx s2(0, 0);
        for (int64_t a = 1; a < p; ++a) s2 += t2.at(a);
        CHECK(std::abs(s2 - cplx(1, 0)) < 1e-8);
        KloostermanTable t3 = build_kloosterman(ctx, 3);
        cplx s3(0, 0);
        for (int64_t a = 1; a < p; ++a) s3 += t3.at(a);
        CHECK(std::abs(s3 - cplx(-1, 0)) < 1e-8);
    }
}

TEST_CASE("K_3 direct double sum agrees with convolution") {
    PrimeContext ctx = make_context(13);
    KloostermanTable t3 = build_kloosterman(ctx, 3);
    for (int64_t a : {int64_t(1), int64_t(5), int64_t(12)})
        CHECK(std::abs(kloosterman(ctx, 3, a) - t3.at(a)) < 1e-9);
}

TEST_CASE("kloosterman rewrite identity") {
    for (int64_t p : {13, 17}) {
        PrimeContext ctx = make_context(p);
        KloostermanTable t2 = build_kloosterman(ctx, 2);
        for (int64_t a = 1; a < p; ++a)
            CHECK(std::abs(kloosterman_rewrite_lhs(ctx, a) - t2.at(ctx.mul(a, a))) < 1e-9);
    }
}

TEST_CASE("twisted moments stay under 2 p^{3/2}") {
    for (int64_t p : {5, 13, 17}) {
        PrimeContext ctx = make_context(p);
        KloostermanTable t2 = build_kloosterman(ctx, 2);
        for (int64_t j = 1; j < p - 1; ++j)
            CHECK(std::abs(twisted_moment(ctx, j, t2)) <= 2.0 * std::pow((double)p, 1.5) + 1e-6);
        CHECK_THROWS(twisted_moment(ctx, 0, t2));
    }
}

TEST_CASE("twisted moment against brute-force double loop at p=5") {
    PrimeContext ctx = make_context(5);
    // oracle: evaluate sum_a phi_2(a) (sum_x e_p(x + a^2/x))^2 from scratch
    cplx brute(0, 0);
    for (int64_t a = 1; a < 5; ++a) {
        cplx k(0, 0);
        for (int64_t x = 1; x < 5; ++x)
            k += ctx.additive_character(x + ctx.mul(ctx.mul(a, a), ctx.inverse(x)));
        brute += ctx.mult_character(2, a) * k * k;
    }
    CHECK(std::abs(twisted_moment(ctx, 2) - brute) < 1e-9);
}

TEST_CASE("general twisted moment cross-checks") {
    PrimeContext ctx = make_context(17);
    // Reindexing a -> a^2: for an even character phi_{2m},
    //   sum_a phi_{2m}(a) K(a^2)^2 = sum_b (1 + chi(b)) phi_m(b) K(b)^2,
    // which splits into two s=2, t=0 general moments.
    cplx lhs = twisted_moment(ctx, 2);
    cplx rhs = twisted_moment_general(ctx, 1, 2, 2, 0) +
               twisted_moment_general(ctx, 1 + 8, 2, 2, 0);
    CHECK(std::abs(lhs - rhs) < 1e-8);
    CHECK_THROWS(twisted_moment_general(ctx, 0, 3, 1, 1));
    // k=3, s=t=1 moment is real (sum of phi-weighted |K_3|^2 plus conjugates)
    cplx v = twisted_moment_general(ctx, 8, 3, 1, 1);
    CHECK(std::isfinite(v.real()));
    CHECK(std::abs(v.imag()) < 1e-7);
}

TEST_CASE("weil check basics") {
    PrimeContext ctx = make_context(13);
    // f(x) = x: sum of chi over F_p is 0
    WeilCheck lin = weil_check(ctx, {0, 1});
    CHECK(lin.sum == 0.0);
    CHECK_FALSE(lin.is_square_form);
    CHECK(lin.bound_holds);
    // f(x) = (x-2)(x-5): sum is -1
    WeilCheck quad = weil_check(ctx, {10, (13 - 7) % 13, 1});  // x^2 -7x + 10
    CHECK(quad.sum == -1.0);
    CHECK_FALSE(quad.is_square_form);
    CHECK(quad.bound_holds);
    // f(x) = x^2: square form, sum = p-1
    WeilCheck sq = weil_check(ctx, {0, 0, 1});
    CHECK(sq.sum == 12.0);
    CHECK(sq.is_square_form);
    CHECK_FALSE(sq.bound_applicable);
    CHECK_THROWS(weil_check(ctx, {0}));
}

TEST_CASE("square-form detection against brute force enumeration") {
    PrimeContext ctx = make_context(13);
    // oracle: f (deg <= 4) is r*g^2 iff it appears among all r*g(t)^2
    auto brute_is_square_form = [&](const std::vector<int64_t>& f) {
        for (int64_t r = 1; r < 13; ++r)
            for (int64_t g2 = 0; g2 < 13; ++g2)
                for (int64_t g1 = 0; g1 < 13; ++g1)
                    for (int64_t g0 = 0; g0 < 13; ++g0) {
                        std::vector<int64_t> cand(5, 0);
                        std::vector<int64_t> g = {g0, g1, g2};
                        for (int i = 0; i < 3; ++i)
                            for (int j = 0; j < 3; ++j)
                                cand[i + j] = (cand[i + j] + r * g[i] % 13 * g[j]) % 13;
                        bool same = true;
                        for (int i = 0; i < 5; ++i)
                            if (cand[i] != (f.size() > (size_t)i ? f[i] : 0)) same = false;
                        if (same) return true;
                    }
        return false;
    };
    std::vector<std::vector<int64_t>> cases = {
        {0, 0, 1},          // x^2
        {1, 2, 1},          // (x+1)^2
        {0, 0, 0, 0, 3},    // 3 x^4
        {0, 0, 5, 0, 1},    // x^4 + 5x^2 = x^2 (x^2 + 5)
        {4, 0, 4, 0, 1},    // (x^2+2)^2
        {1, 1, 1},          // irreducible-ish quadratic
        {0, 1, 0, 1},       // x^3 + x
        {0, 0, 0, 1},       // x^3
        {12, 0, 3, 0, 9},   // 9x^4+3x^2+12 arbitrary
    };
    for (const auto& f : cases) {
        WeilCheck w = weil_check(ctx, f);
        CHECK(w.is_square_form == brute_is_square_form(f));
    }
}

TEST_CASE("weil bound for all non-square-form cubics at p=13") {
    PrimeContext ctx = make_context(13);
    for (int64_t c3 = 1; c3 < 13; ++c3)
        for (int64_t c2 = 0; c2 < 13; ++c2)
            for (int64_t c1 = 0; c1 < 13; ++c1)
                for (int64_t c0 = 0; c0 < 13; ++c0) {
                    WeilCheck w = weil_check(ctx, {c0, c1, c2, c3});
                    if (w.bound_applicable) CHECK(w.bound_holds);
                }
}

TEST_CASE("charsum_pair values and identity chain") {
    PrimeContext ctx = make_context(13);
    // trivial character gives (sum chi(x(x+1)))^2 = 1
    CHECK(std::abs(charsum_pair(ctx, 0) - cplx(1, 0)) < 1e-9);
    for (int64_t j = 1; j < 12; ++j)
        CHECK(std::abs(charsum_pair(ctx, j)) <= 2.0 * 13 + 1e-6);
    // proof chain: equals conj(phi)(4) G(phi)/p sum_a conj(phi)(a) K(a^2)^2
    KloostermanTable t2 = build_kloosterman(ctx, 2);
    for (int64_t j : {int64_t(1), int64_t(6)}) {
        cplx rhs(0, 0);
        for (int64_t a = 1; a < 13; ++a) {
            cplx k = t2.at(ctx.mul(a, a));
            rhs += std::conj(ctx.mult_character(j, a)) * k * k;
        }
        rhs *= std::conj(ctx.mult_character(j, 4)) * gauss_sum(ctx, j) / 13.0;
        CHECK(std::abs(charsum_pair(ctx, j) - rhs) < 1e-6);
    }
}
