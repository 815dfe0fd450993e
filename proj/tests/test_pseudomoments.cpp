#include "doctest.h"
#include "paley/character_sums.hpp"
#include "paley/fk_optimizer.hpp"
#include "paley/graph_matrices.hpp"
#include "paley/pseudomoments.hpp"

#include <cmath>

using namespace paley;

TEST_CASE("theorem alphas") {
    FkParams a = theorem_alphas(0.05, 13);
    CHECK(a.a1 == doctest::Approx(0.05 * std::pow(13.0, -2.0 / 3.0)).epsilon(1e-12));
    CHECK(a.a1 == doctest::Approx(0.009014).epsilon(1e-3));
    CHECK(a.a2 / (a.a1 * a.a1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(a.a3 / std::pow(a.a1, 3) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(a.a4 / std::pow(a.a1, 4) == doctest::Approx(512.0).epsilon(1e-12));
    CHECK_THROWS(theorem_alphas(0.0, 13));
}

TEST_CASE("assemble_M entries") {
    PaleyGraph g = build_paley(13);
    FkParams al{0.1, 0.07, 0.05, 0.02};
    PseudomomentMatrix m = assemble_M(g, al);
    CHECK(m.dim == 53);  // 1 + 13 + 39
    CHECK(m.n_edges == 39);
    CHECK(m.data(0, 0) == 1.0);
    for (int i = 0; i < 13; ++i) {
        CHECK(m.data(1 + i, 1 + i) == al.a1);
        CHECK(m.data(0, 1 + i) == al.a1);
    }
    CliqueBasis basis(g);
    for (size_t e = 0; e < basis.edges.size(); ++e)
        CHECK(m.data(1 + 13 + e, 1 + 13 + e) == al.a2);
    // disjoint-edge entries: alpha4 exactly when all six pairs are edges;
    // omega(G_13) = 3, so at p = 13 every such entry is zero, while p = 29
    // has genuine 4-cliques
    int count_a4 = 0;
    for (int64_t p : {13, 29}) {
        PaleyGraph gp = build_paley(p);
        CliqueBasis bp(gp);
        PseudomomentMatrix mp = assemble_M(gp, al);
        for (size_t e = 0; e < bp.edges.size(); ++e)
            for (size_t f = 0; f < bp.edges.size(); ++f) {
                if (e == f) continue;
                auto [a, b] = bp.edges[e];
                auto [c, d] = bp.edges[f];
                if (a == c || a == d || b == c || b == d) continue;
                bool k4 = gp.adjacent(a, c) && gp.adjacent(a, d) && gp.adjacent(b, c) &&
                          gp.adjacent(b, d);
                double want = k4 ? al.a4 : 0.0;
                REQUIRE(mp.data(1 + p + e, 1 + p + f) == want);
                if (k4) ++count_a4;
            }
    }
    CHECK(count_a4 > 0);
    // symmetric
    CHECK((m.data - m.data.transpose()).norm() == 0.0);
}

TEST_CASE("H blocks: formula, eigenvalues, N restriction") {
    PaleyGraph g = build_paley(13);
    FkParams al = theorem_alphas(0.05, 13);
    HBlocks h = assemble_H(g, al);

    MatrixXd a_mat = g.adjacency_matrix().cast<double>();
    MatrixXd want = al.a1 * MatrixXd::Identity(13, 13) + al.a2 * a_mat -
                    al.a1 * al.a1 * MatrixXd::Ones(13, 13);
    CHECK((h.h11 - want).cwiseAbs().maxCoeff() < 1e-15);

    VectorXd eigs = sym_eigenvalues(h.h11);
    double rp = std::sqrt(13.0);
    double e_top = al.a1 + 6.0 * al.a2 - 13.0 * al.a1 * al.a1;
    double e_plus = al.a1 + (-1 + rp) / 2.0 * al.a2;
    double e_minus = al.a1 + (-1 - rp) / 2.0 * al.a2;
    int n_top = 0, n_plus = 0, n_minus = 0;
    for (int i = 0; i < 13; ++i) {
        if (std::abs(eigs(i) - e_top) < 1e-12) ++n_top;
        if (std::abs(eigs(i) - e_plus) < 1e-12) ++n_plus;
        if (std::abs(eigs(i) - e_minus) < 1e-12) ++n_minus;
    }
    CHECK(n_top == 1);
    CHECK(n_plus == 6);
    CHECK(n_minus == 6);

    CHECK(h_vs_n_residual(g, al) < 1e-10);
    CHECK(h_vs_n_residual(build_paley(17), theorem_alphas(0.03, 17)) < 1e-10);
}

TEST_CASE("min eigenvalue") {
    CHECK(min_eigenvalue(MatrixXd::Identity(4, 4)).value == doctest::Approx(1.0));
    Eigen::Vector3d d(1.0, -2.0, 3.0);
    CHECK(min_eigenvalue(d.asDiagonal().toDenseMatrix()).value == doctest::Approx(-2.0));
    // the closed-form construction is PSD at small c
    PaleyGraph g = build_paley(61);
    PseudomomentMatrix m = assemble_M(g, theorem_alphas(0.01, 61));
    CHECK(min_eigenvalue(m.data).value >= -1e-8);
}

TEST_CASE("verify_main_construction") {
    auto pts = verify_main_construction(0.01, {13, 17}, 0.10);
    REQUIRE(pts.size() == 2);
    for (const auto& pt : pts) {
        CHECK(pt.psd);
        CHECK(pt.largest_feasible_c >= 0.01);
    }
    // far-infeasible c: alpha1 > 1 territory
    PaleyGraph g = build_paley(13);
    PseudomomentMatrix m = assemble_M(g, theorem_alphas(10.0, 13));
    CHECK(min_eigenvalue(m.data).value < -1e-6);
}

TEST_CASE("pseudomoment sums") {
    for (int64_t p : {13, 17}) {
        PaleyGraph g = build_paley(p);
        FkParams al = theorem_alphas(0.05, p);
        PseudomomentSumReport rep = pseudomoment_sum_checks(g, al);
        CHECK(rep.exact_identities_hold);
        CHECK(rep.triangle_sum == doctest::Approx((p - 5) / 4.0 * al.a3).epsilon(1e-12));
    }
    // triangle count through {0,1} at p=13 is 2, at p=17 is 3
    FkParams unit{1, 1, 1, 1};
    CHECK(pseudomoment_sum_checks(build_paley(13), unit).triangle_sum == doctest::Approx(2.0));
    CHECK(pseudomoment_sum_checks(build_paley(17), unit).triangle_sum == doctest::Approx(3.0));
    // the quartic sum's deviation from its main term, against p^{3/2} a4
    PseudomomentSumReport rep13 = pseudomoment_sum_checks(build_paley(13), unit);
    CHECK(rep13.quad_deviation_ratio <= 10.0);
}

TEST_CASE("u vector quadratic forms and the Kloosterman identity") {
    for (int64_t p : {13, 17}) {
        PaleyGraph g = build_paley(p);
        UQuadraticReport rep = u_quadratic_forms(g);
        CHECK(rep.u_norm2 <= 4.0 * p * (p - 1) / 2.0);
        CHECK(rep.closed_form_residual < 1e-8);
        // the exact chain through chi(d)|K_3(d)|^2
        CHECK(rep.identity_rel_err < 1e-6);
        // u* T441 u = Q/4 + u0* T441 u0 once the odd cross terms cancel
        CHECK(rep.relation_residual < 1e-6 * std::max(1.0, std::abs(rep.u_t441_u)));
    }
    // ||(P0+P1)u||^2 stays O(1); the recorded constant is below 5 at p=13
    UQuadraticReport r13 = u_quadratic_forms(build_paley(13));
    CHECK(r13.u_low_norm2 < 5.0);
}

TEST_CASE("u identity brute-force cross check at p=5") {
    // hand-checkable small case: Q = sum over quadruples with all chi factors
    PaleyGraph g = build_paley(5);
    UQuadraticReport rep = u_quadratic_forms(g);
    // independent evaluation of u* T441 u from the dense matrix
    VectorXd u = u_vector(g);
    GraphMatrix t = build_graph_matrix(g, Shape::T441);
    double quad = u.dot(t.data * u);
    CHECK(rep.u_t441_u == doctest::Approx(quad).epsilon(1e-12));
    CHECK(quad == doctest::Approx(-8.0).epsilon(1e-12));       // enumerated by hand
    CHECK(rep.char_sum_lhs == doctest::Approx(-24.0).epsilon(1e-12));
    CHECK(rep.identity_rel_err < 1e-9);
}

TEST_CASE("schur chain soundness") {
    PaleyGraph g = build_paley(13);
    for (double c : {0.01, 0.03, 0.05}) {
        FkParams al = theorem_alphas(c, 13);
        CHECK(schur_chain_sound(g, al));
    }
}

TEST_CASE("fk4 optimizer brackets and sandwich") {
    PaleyGraph g = build_paley(13);
    FkResult fk = fk4_value(g, 1e-3);
    CHECK(fk.converged);
    CHECK(fk.upper - fk.lower <= 1e-3 + 1e-12);
    CHECK(fk.value >= 3.0 - 1e-3);               // omega(G_13) = 3
    CHECK(fk.value <= std::sqrt(13.0) + 1e-3);   // SOS2 ceiling
    // the certified-feasible point is genuinely PSD
    PseudomomentMatrix m = assemble_M(g, fk.best_alpha);
    CHECK(min_eigenvalue(m.data).value >= -1e-6);
}
