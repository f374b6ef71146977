import math
import random
from fractions import Fraction

import numpy as np
import pytest

from cascadekit.cascade import layer_decomposition
from cascadekit.liealg import build_nilradical
from cascadekit.pfaff import (a_diamond, ad_trace_weights, b_lambda_matrix, det, dp_symbol,
                              formal_degree, layer_pfaffian, n_variables, pfaffian,
                              pfaffian_matching_sum, plancherel_density, quasicenter_det,
                              scaling_holds, semiinvariance_check, variable_roots)
from cascadekit.poly import SparsePoly
from cascadekit.rootkit import restricted_datum

SAMPLES = ["sl(3,R)", "sl(4,R)", "sl(5,R)", "sl(6,R)", "split-B(3)", "split-C(3)", "split-G2",
           "split-D(4)", "su(2,1)", "su(2,3)", "sl(3,H)", "so(2,5)", "so(3,4)", "sp(3,R)"]


def decomp(name):
    return layer_decomposition(build_nilradical(name))


def const_matrix(rows):
    n = len(rows)
    return [[SparsePoly.const(0, rows[i][j]) for j in range(n)] for i in range(n)]


def test_pfaffian_2x2_and_4x4_formula():
    a, b, c, d, e, f = 2, 3, 5, 7, 11, 13
    M2 = const_matrix([[0, a], [-a, 0]])
    assert pfaffian(M2, 0) == SparsePoly.const(0, a)
    M4 = const_matrix([[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]])
    assert pfaffian(M4, 0) == SparsePoly.const(0, a * f - b * e + c * d)
    assert pfaffian([], 0) == SparsePoly.const(0, 1)


def test_pfaffian_random_matches_matching_sum_and_det():
    rng = random.Random(7)
    for n in (2, 4, 6, 8):
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                x = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                rows[i][j], rows[j][i] = x, -x
        M = const_matrix(rows)
        pf = pfaffian(M, 0)
        assert pf == pfaffian_matching_sum(M, 0)
        assert pf * pf == det(M, 0)
        num = np.linalg.det(np.array(rows, dtype=float))
        assert math.isclose(float(pf.evaluate(())) ** 2, num, rel_tol=1e-9, abs_tol=1e-9)


def test_sl3_density():
    D = decomp("sl(3,R)")
    P = plancherel_density(D)
    assert P.format() == "λ1"
    assert D.c == 2
    assert formal_degree(D, (3,)) == 3


def test_sl4_density():
    D = decomp("sl(4,R)")
    M = b_lambda_matrix(D, 1)
    assert len(M) == 4
    assert plancherel_density(D).format() == "-λ1^2"
    assert layer_pfaffian(D, 2) == SparsePoly.const(2)
    assert formal_degree(D, (2, 7)) == 4
    with pytest.raises(ValueError):
        formal_degree(D, (0, 1))


@pytest.mark.parametrize("name", SAMPLES)
def test_layer_pfaffians_against_numeric_det(name):
    D = decomp(name)
    nv = n_variables(D)
    rng = random.Random(hash(name) & 0xffff)
    for r in range(1, D.m + 1):
        M = b_lambda_matrix(D, r)
        Pf = layer_pfaffian(D, r)
        assert not Pf.is_zero()
        if len(M) <= 8:
            assert Pf == pfaffian_matching_sum(M, nv)
        for _ in range(3):
            lam = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(nv))
            num = np.array([[float(e.evaluate(lam)) for e in row] for row in M]) if M else np.zeros((0, 0))
            want = np.linalg.det(num) if M else 1.0
            got = float(Pf.evaluate(lam)) ** 2
            assert math.isclose(got, want, rel_tol=1e-8, abs_tol=1e-8)
            for i in range(len(M)):
                for j in range(len(M)):
                    assert num[i, j] == -num[j, i]


@pytest.mark.parametrize("name", SAMPLES)
def test_density_homogeneity_and_scaling(name):
    D = decomp(name)
    P = plancherel_density(D)
    assert P.is_homogeneous() and P.degree == sum(D.d)
    assert scaling_holds(P)
    assert D.c == 2 ** sum(D.d) * math.prod(math.factorial(x) for x in D.d)


@pytest.mark.parametrize("name", SAMPLES)
def test_semiinvariance_numeric(name):
    # P(exp(root_k(xi)) lambda_k) = exp(sum_r d_r beta_r(xi)) P(lambda) at random xi
    D = decomp(name)
    P = plancherel_density(D)
    roots = variable_roots(D)
    rng = random.Random(3)
    nv = n_variables(D)
    xi = [rng.uniform(-0.3, 0.3) for _ in range(len(D.betas[0]))]
    lam = [rng.uniform(0.5, 1.5) for _ in range(nv)]
    ev = lambda a: sum(float(x) * y for x, y in zip(a, xi))

    def peval(poly, vals):
        return sum(float(c) * math.prod(v ** k for v, k in zip(vals, e)) for e, c in poly.terms.items())

    scaled = [math.exp(ev(a)) * l for a, l in zip(roots, lam)]
    factor = math.exp(sum(d * ev(b) for d, b in zip(D.d, D.betas)))
    assert math.isclose(peval(P, scaled), factor * peval(P, lam), rel_tol=1e-9)
    rep = semiinvariance_check(D)
    assert rep["ok"], rep


def test_ad_trace_closed_form():
    for name in SAMPLES:
        D = decomp(name)
        tr = ad_trace_weights(D)
        assert tr["mismatches"] == []


def test_det_mult_one():
    D = decomp("sl(4,R)")
    assert quasicenter_det(D).format() == "λ1*λ2"


def test_det_with_multiplicity_four():
    D = decomp("sl(3,H)")
    R = restricted_datum("sl(3,H)")
    assert R.mult[D.betas[0]] == 4
    Det = quasicenter_det(D)
    assert Det.degree == 4 and Det.format() == "λ1*λ2*λ3*λ4"
    assert plancherel_density(D).degree == 4
    rep = semiinvariance_check(D)
    assert rep["mult_flags"] == [1]


def test_su21_density():
    D = decomp("su(2,1)")
    assert plancherel_density(D).format() == "2*λ1"


def test_dp_symbol_degree():
    for name in SAMPLES:
        D = decomp(name)
        sym, meta = dp_symbol(D)
        assert meta["degree"] == meta["expected_degree"] == Fraction(D.ambient.dim + D.s.dim, 2)
    sym, meta = dp_symbol(decomp("sl(4,R)"))
    assert sym in (SparsePoly(2, {(3, 1): 1}), SparsePoly(2, {(3, 1): -1}))


@pytest.mark.parametrize("name,dim", [("sl(4,R)", 1), ("sl(3,R)", 1), ("split-B(3)", 0),
                                      ("sl(5,R)", 2), ("split-D(5)", 1), ("su(2,4)", 0)])
def test_a_diamond(name, dim):
    D = decomp(name)
    basis = a_diamond(D)
    assert len(basis) == dim
    for v in basis:
        assert all(sum(x * y for x, y in zip(b, v)) == 0 for b in D.betas)
