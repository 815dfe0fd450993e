"""Smoke tests for the python bindings (fast operations only)."""

import math

import pytest

paley = pytest.importorskip("paley_sos")


def test_context_and_legendre():
    ctx = paley.make_context(13)
    assert ctx.p == 13
    assert ctx.generator == 2
    squares = {x * x % 13 for x in range(1, 13)}
    for a in range(1, 13):
        assert ctx.legendre(a) == (1 if a in squares else -1)
    assert ctx.legendre(0) == 0


def test_primes():
    assert paley.paley_primes(4, 30) == [5, 13, 17, 29]


def test_gauss_sum():
    ctx = paley.make_context(13)
    g = paley.gauss_sum(ctx, 6)
    assert abs(g - math.sqrt(13)) < 1e-9


def test_graph_basics():
    g = paley.build_paley(13)
    lam, mu, holds = paley.strong_regularity(g)
    assert (lam, mu, holds) == (2, 3, True)
    assert paley.clique_number(g) == 3
    adj, seidel = paley.spectra(g)
    assert abs(adj[-1] - 6.0) < 1e-8
    assert abs(seidel[-1] - math.sqrt(13)) < 1e-8


def test_graph_matrix_and_diamond():
    g = paley.build_paley(13)
    t401 = paley.build_graph_matrix(g, "T401")
    assert t401.shape == (78, 78)
    d = paley.diamond_matrix(g)
    assert d[0, 1] == -10.0
    assert paley.exact_decomposition_check(g, "T301") < 1e-8


def test_alphas_and_psd():
    a1, a2, a3, a4 = paley.theorem_alphas(0.05, 13)
    assert abs(a2 - 4 * a1 * a1) < 1e-15
    g = paley.build_paley(13)
    m = paley.assemble_M(g, a1, a2, a3, a4)
    assert paley.min_eigenvalue(m) > -1e-8


def test_schur_residual():
    g = paley.build_paley(13)
    h22, h21h12, printed = paley.schur_decomposition_residual(g, 0.3, 0.2, 0.1, 0.05)
    assert h22 < 1e-8
    assert h21h12 < 1e-8


def test_fk4_and_sos2():
    g = paley.build_paley(13)
    value, lo, hi, converged = paley.fk4_value(g, 1e-2)
    assert converged
    assert 2.9 < value < 3.7
    s2 = paley.sos2_value(g, 1e-6)
    assert abs(s2 - math.sqrt(13)) < 1e-3


def test_power_fit():
    a, b, r2, n = paley.fit_power_law([(10, 10.0), (100, 100.0), (1000, 1000.0)])
    assert abs(a - 1) < 1e-9 and abs(b - 1) < 1e-12 and n == 3
