#include "doctest.h"
#include "paley/paley_graph.hpp"

#include <cmath>
#include <random>

using namespace paley;

TEST_CASE("paley graph on 5 vertices is the 5-cycle") {
    PaleyGraph g = build_paley(5);
    // QRs mod 5 are {1,4}: edges exactly between consecutive residues
    for (int64_t a = 0; a < 5; ++a)
        for (int64_t b = 0; b < 5; ++b) {
            bool expect = (a != b) && ((a - b + 5) % 5 == 1 || (b - a + 5) % 5 == 1);
            CHECK(g.adjacent(a, b) == expect);
        }
}

TEST_CASE("p = 3 mod 4 rejected") {
    CHECK_THROWS(build_paley(7));
    CHECK_THROWS(build_paley(19));
}

TEST_CASE("degrees and seidel relation") {
    for (int64_t p : {13, 17, 29}) {
        PaleyGraph g = build_paley(p);
        Eigen::MatrixXi a = g.adjacency_matrix();
        Eigen::MatrixXi s = g.seidel_matrix();
        for (int64_t v = 0; v < p; ++v) CHECK(a.row(v).sum() == (p - 1) / 2);
        // S = 2A - J + I entrywise
        Eigen::MatrixXi expect = 2 * a - Eigen::MatrixXi::Ones(p, p) +
                                 Eigen::MatrixXi::Identity(p, p);
        CHECK(s == expect);
        CHECK(s == s.transpose().eval());
        // S^2 = pI - J in exact integer arithmetic
        Eigen::MatrixXi s2 = s * s;
        Eigen::MatrixXi want = (int)p * Eigen::MatrixXi::Identity(p, p) -
                               Eigen::MatrixXi::Ones(p, p);
        CHECK(s2 == want);
    }
}

TEST_CASE("strong regularity parameters") {
    auto check = [](int64_t p, int64_t lam, int64_t mu) {
        StrongRegularity sr = strong_regularity(build_paley(p));
        CHECK(sr.lambda == lam);
        CHECK(sr.mu == mu);
        CHECK(sr.holds);
    };
    check(5, 0, 1);
    check(13, 2, 3);
    check(17, 3, 4);
}

TEST_CASE("spectra match the closed forms") {
    for (int64_t p : {13, 17}) {
        PaleyGraph g = build_paley(p);
        Spectra sp = spectra(g);
        double rp = std::sqrt((double)p);
        // adjacency: (p-1)/2 once, (-1 +- sqrt p)/2 each (p-1)/2 times
        CHECK(sp.adjacency_eigs(p - 1) == doctest::Approx((p - 1) / 2.0).epsilon(1e-8));
        for (int64_t i = 0; i < (p - 1) / 2; ++i)
            CHECK(sp.adjacency_eigs(i) == doctest::Approx((-1 - rp) / 2).epsilon(1e-8));
        for (int64_t i = (p - 1) / 2; i < p - 1; ++i)
            CHECK(sp.adjacency_eigs(i) == doctest::Approx((-1 + rp) / 2).epsilon(1e-8));
        // Seidel: 0 once, +-sqrt(p) each (p-1)/2 times
        for (int64_t i = 0; i < (p - 1) / 2; ++i)
            CHECK(sp.seidel_eigs(i) == doctest::Approx(-rp).epsilon(1e-8));
        CHECK(std::abs(sp.seidel_eigs((p - 1) / 2)) < 1e-8);
        for (int64_t i = (p + 1) / 2; i < p; ++i)
            CHECK(sp.seidel_eigs(i) == doctest::Approx(rp).epsilon(1e-8));
        // trace of adjacency is zero
        CHECK(std::abs(sp.adjacency_eigs.sum()) < 1e-7);
    }
}

TEST_CASE("clique numbers") {
    CHECK(clique_number(build_paley(5)) == 2);
    CHECK(clique_number(build_paley(13)) == 3);
    CHECK(clique_number(build_paley(17)) == 3);
    CHECK(clique_number(build_paley(29)) == 4);
    // sanity floor and the trivial spectral ceiling
    for (int64_t p : {5, 13, 17, 29, 37}) {
        int w = clique_number(build_paley(p));
        CHECK((double)w >= 0.5 * std::log2((double)p));
        CHECK((double)w <= std::sqrt((double)p));
    }
}

TEST_CASE("clique solver on hand-built graphs") {
    // complete graph K5
    std::vector<std::vector<bool>> k5(5, std::vector<bool>(5, true));
    for (int i = 0; i < 5; ++i) k5[i][i] = false;
    CHECK(clique_number_adj(k5) == 5);
    // path on 4 vertices
    std::vector<std::vector<bool>> path(4, std::vector<bool>(4, false));
    for (int i = 0; i + 1 < 4; ++i) path[i][i + 1] = path[i + 1][i] = true;
    CHECK(clique_number_adj(path) == 2);
}

TEST_CASE("classical bounds") {
    ClassicalBounds b101 = classical_bounds(101);
    CHECK(b101.hoffman == doctest::Approx(10.0499).epsilon(1e-4));
    CHECK(b101.hansen_podolskii == doctest::Approx(std::sqrt(201.0) / 2 + 1).epsilon(1e-12));
    CHECK(classical_bounds(13).hoffman == doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
    // the HP bound only undercuts sqrt(p) from p = 13 on (at p = 5 it is 2.5 > sqrt 5)
    for (int64_t p : paley_primes(13, 300))
        CHECK(classical_bounds(p).hansen_podolskii < classical_bounds(p).hoffman);
}

TEST_CASE("self-complementarity under a non-residue multiplier") {
    for (int64_t p : paley_primes(5, 61)) {
        PaleyGraph g = build_paley(p);
        int64_t nr = 0;
        for (int64_t a = 2; a < p; ++a)
            if (g.ctx().legendre(a) == -1) { nr = a; break; }
        for (int64_t a = 0; a < p; ++a)
            for (int64_t b = a + 1; b < p; ++b) {
                bool image_edge = g.adjacent(nr * a % p, nr * b % p);
                CHECK(image_edge == !g.adjacent(a, b));
            }
    }
}

TEST_CASE("affine maps with square slope are automorphisms") {
    PaleyGraph g = build_paley(29);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        int64_t a = 1 + (int64_t)(rng() % 28);
        if (g.ctx().legendre(a) != 1) continue;
        int64_t b = (int64_t)(rng() % 29);
        for (int64_t x = 0; x < 29; ++x)
            for (int64_t y = x + 1; y < 29; ++y)
                CHECK(g.adjacent(x, y) == g.adjacent((a * x + b) % 29, (a * y + b) % 29));
    }
}
