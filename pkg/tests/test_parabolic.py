from fractions import Fraction

import pytest

from cascadekit.cascade import layer_decomposition
from cascadekit.liealg import build_nilradical
from cascadekit.parabolic import (build_parabolic, check_intersection_lemmas, check_phi_setup,
                                  check_psi_chain, invariance_class, parabolic_report, parse_phi,
                                  phi_layers, phi_plancherel_density, psi_chain)
from cascadekit.pfaff import plancherel_density
from cascadekit.rootkit import restricted_datum


def setup(name, mask):
    N = build_nilradical(name)
    D = layer_decomposition(N)
    return N, D, build_parabolic(N, D.datum, D, mask)


def test_sl4_middle_root():
    N, D, P = setup("sl(4,R)", 0b010)
    assert P.n_phi.dim == 5
    layers = phi_layers(P, D)
    assert [(x.I, x.l.dim, x.z.dim, x.d) for x in layers] == [([1], 5, 1, 2)]
    dens, c = phi_plancherel_density(P, layers)
    assert dens.format() == "-λ1^2" and c == 8
    assert check_phi_setup(P, layers).ok
    assert check_intersection_lemmas(P)["ok"]


@pytest.mark.parametrize("name", ["sl(3,R)", "sl(4,R)", "sl(5,R)", "split-B(3)", "split-C(3)",
                                  "split-G2", "su(2,4)", "so(3,4)", "sl(3,H)"])
def test_empty_phi_recovers_minimal_case(name):
    N, D, P = setup(name, 0)
    assert P.n_phi.dim == N.dim
    dens, c = phi_plancherel_density(P, phi_layers(P, D))
    assert dens == plancherel_density(D) and c == D.c


@pytest.mark.parametrize("name", ["sl(4,R)", "split-B(3)", "su(2,3)", "so(3,4)", "split-G2"])
def test_dim_n_phi_counts_roots(name):
    R = restricted_datum(name)
    N = build_nilradical(name)
    D = layer_decomposition(N)
    k = len(R.simple_roots)
    for mask in range(2 ** k):
        P = build_parabolic(N, R, D, mask)
        want = sum(R.mult[a] for a in R.positive_roots
                   if any(c for i, c in enumerate(R.coefficients(a)) if not mask >> i & 1))
        assert P.n_phi.dim == want


def test_full_phi_is_trivial():
    N, D, P = setup("sl(4,R)", 0b111)
    assert P.n_phi.dim == 0
    assert phi_layers(P, D) == []


@pytest.mark.parametrize("name", ["sl(4,R)", "sl(5,R)", "split-B(3)", "split-C(3)", "split-D(4)",
                                  "su(2,4)", "so(3,4)", "so(2,5)", "sl(3,H)", "split-G2"])
def test_all_subsets_pass(name):
    N = build_nilradical(name)
    D = layer_decomposition(N)
    for mask in range(2 ** len(D.datum.simple_roots)):
        rep = parabolic_report(N, D, mask)
        assert rep["ok"], (mask, rep["witnesses"])
        assert rep["checks"]["invariance"] in ("invariant", "restriction-class-stable", "undetermined")


def test_nonempty_dprime_sets_occur():
    N = build_nilradical("so(3,4)")
    D = layer_decomposition(N)
    seen = False
    for mask in range(8):
        P = build_parabolic(N, D.datum, D, mask)
        seen |= any(x for x in P.Jpp if x)
    assert seen


def test_restriction_uses_outside_coefficients():
    N, D, P = setup("sl(4,R)", 0b010)
    R = P.datum
    top = next(a for a in R.positive_roots if R.coefficients(a) == (1, 1, 1))
    assert P.restriction(top) == (1, 1)
    mid = R.simple_roots[1]
    assert not P.in_nil(mid)


def test_parse_phi():
    assert parse_phi("0b101", 3) == 5
    assert parse_phi(3, 2) == 3
    with pytest.raises(ValueError):
        parse_phi("0b1000", 3)


def test_psi_chain():
    R = restricted_datum("sl(5,R)")
    D = layer_decomposition(build_nilradical("sl(5,R)"))
    chain = psi_chain(R, D.betas)
    assert [len(x) for x in chain] == [4, 2]
    assert check_psi_chain(R, D.betas) == []


def test_dprime_sets_match_sigma_scan():
    from cascadekit.cascade import sigma_involution
    for name in ("sl(4,R)", "so(3,4)", "su(2,4)", "split-B(3)"):
        N = build_nilradical(name)
        D = layer_decomposition(N)
        R = D.datum
        for mask in range(2 ** len(R.simple_roots)):
            P = build_parabolic(N, R, D, mask)
            for r, b in enumerate(D.betas, start=1):
                if not P.in_nil(b):
                    assert P.Jpp[r - 1] is None
                    continue
                sig = sigma_involution(R, D.betas, r, D.layers)
                want = {a for a in D.layers[r - 1] if P.in_nil(a) and not P.in_nil(sig[a])}
                assert set(P.Jpp[r - 1]) == want
                for a in want:
                    assert P.restriction(a) == P.restriction(b)


def test_sl4_middle_root_grouping_and_class():
    N, D, P = setup("sl(4,R)", 0b010)
    assert P.Jpp == [frozenset(), None]
    # brute-force restriction classes of the betas with nonzero restriction
    classes = {}
    for i, b in enumerate(D.betas, start=1):
        if any(P.restriction(b)):
            classes.setdefault(P.restriction(b), []).append(i)
    layers = phi_layers(P, D)
    assert [x.I for x in layers] == list(classes.values()) == [[1]]
    assert invariance_class(P, layers) == "invariant"


def test_corrupted_bracket_fails_part_d():
    A = build_nilradical("sl(4,R)")
    lab = [b.label for b in A.basis]
    bad = A.with_constant(lab.index("e2-e3#0"), lab.index("e1-e4#0"), lab.index("e1-e2#0"), 1)
    D = layer_decomposition(bad, A.datum)
    rep = check_intersection_lemmas(build_parabolic(bad, A.datum, D, 0))
    assert not rep["d"] and not rep["ok"]
    assert rep["witnesses"][0]["labels"] == ["e2-e3#0", "e1-e4#0", "e1-e2#0"]
