from fractions import Fraction
from itertools import combinations

import pytest

from cascadekit.cascade import (cascade_with_candidates, check_layer_filtration, check_layer_roots,
                                check_setup, heisenberg_pairing_check, kostant_cascade,
                                layer_decomposition, layer_sets, sigma_involution, verify_cascade)
from cascadekit.liealg import NilpotentAlgebra, build_nilradical
from cascadekit.rootkit import build_root_system, restricted_datum, root_label


def labels(roots):
    return [root_label(a) for a in roots]


def test_a2_cascade():
    R = build_root_system("A", 2)
    betas = kostant_cascade(R)
    assert labels(betas) == ["e1-e3"]
    assert sorted(labels(layer_sets(R, betas)[0])) == ["e1-e2", "e2-e3"]


def test_a3_cascade_and_layers():
    R = build_root_system("A", 3)
    betas = kostant_cascade(R)
    assert labels(betas) == ["e1-e4", "e2-e3"]
    L = layer_sets(R, betas)
    assert sorted(labels(L[0])) == ["e1-e2", "e1-e3", "e2-e4", "e3-e4"]
    assert L[1] == frozenset()


def test_b2_cascade():
    R = build_root_system("B", 2)
    assert labels(kostant_cascade(R)) == ["e1+e2", "e1-e2"]


# Cascade length for each irreducible type, counted independently
EXPECTED_LEN = {("A", 1): 1, ("A", 2): 1, ("A", 3): 2, ("A", 4): 2, ("A", 5): 3, ("A", 8): 4,
                ("B", 3): 3, ("B", 5): 5, ("C", 4): 4, ("D", 4): 4, ("D", 5): 4, ("D", 6): 6,
                ("BC", 3): 3, ("G2", None): 2, ("F4", None): 4, ("E6", None): 4,
                ("E7", None): 7, ("E8", None): 8}


@pytest.mark.parametrize("key", list(EXPECTED_LEN))
def test_cascade_length_and_strong_orthogonality(key):
    t, n = key
    R = build_root_system(t, n) if n else build_root_system(t)
    betas = kostant_cascade(R)
    assert len(betas) == EXPECTED_LEN[key]
    roots = set(R.roots)
    for a, b in combinations(betas, 2):
        assert R.inner(a, b) == 0
        assert tuple(x + y for x, y in zip(a, b)) not in roots
        assert tuple(x - y for x, y in zip(a, b)) not in roots
    assert verify_cascade(R, betas) == []
    layer_sets(R, betas)  # raises if not a partition


def test_verify_cascade_rejects_wrong_choice():
    R = build_root_system("A", 3)
    bad = [R.simple_roots[0], R.simple_roots[2]]
    assert verify_cascade(R, bad)


def test_d4_tie_break_is_logged():
    R = build_root_system("D", 4)
    betas, cands = cascade_with_candidates(R)
    assert len(cands[1]) == 3
    assert betas[1] == min(cands[1])


def test_sigma_examples():
    R = build_root_system("A", 3)
    betas = kostant_cascade(R)
    s = sigma_involution(R, betas, 1)
    named = {root_label(a): root_label(b) for a, b in s.items()}
    assert named == {"e1-e2": "e2-e4", "e2-e4": "e1-e2", "e1-e3": "e3-e4", "e3-e4": "e1-e3"}


def test_sigma_fixed_points_bc():
    # su(p,q) with p < q: the layer of 2e_r contains e_r, fixed by sigma
    R = restricted_datum("su(2,4)")
    betas = kostant_cascade(R)
    assert labels(betas) == ["2e1", "2e2"]
    s = sigma_involution(R, betas, 2)
    fixed = [root_label(a) for a, b in s.items() if a == b]
    assert fixed == ["e2"]
    for r in (1, 2):
        for a, b in sigma_involution(R, betas, r).items():
            assert sigma_involution(R, betas, r)[b] == a


def test_sl3_decomposition():
    D = layer_decomposition(build_nilradical("sl(3,R)"))
    assert D.dims() == {"n": 3, "s": 1, "l": [3], "z": [1], "v": [2]}
    assert D.d == [1] and D.c == 2


def test_sl4_decomposition():
    D = layer_decomposition(build_nilradical("sl(4,R)"))
    assert D.dims() == {"n": 6, "s": 2, "l": [5, 1], "z": [1, 1], "v": [4, 0]}
    assert D.d == [2, 0] and D.c == 8
    rep = check_setup(D)
    assert rep.ok and rep.witnesses == []


@pytest.mark.parametrize("name", ["sl(5,R)", "split-B(3)", "split-G2", "su(2,3)", "sl(3,H)",
                                  "so(2,5)", "sp(3,R)", "so(3,4)", "split-D(4)"])
def test_setup_holds_on_catalog_samples(name):
    D = layer_decomposition(build_nilradical(name))
    assert check_setup(D).ok
    assert check_setup(D, "weak").ok
    assert check_layer_filtration(D) == []
    assert check_layer_roots(D) == []
    n = D.ambient.dim
    assert sum(l.dim for l in D.l) == n
    assert sum(l.dim - z.dim for l, z in zip(D.l, D.z)) % 2 == 0


def _sl4_fixture(i, j, k):
    A = build_nilradical("sl(4,R)")
    lab = [b.label for b in A.basis]
    return A.with_constant(lab.index(i + "#0"), lab.index(j + "#0"), lab.index(k + "#0"), 1)


def test_corrupted_center_bracket_is_reported():
    D = layer_decomposition(_sl4_fixture("e2-e3", "e1-e4", "e1-e2"))
    rep = check_setup(D)
    assert not rep.cond_c
    w = rep.witnesses[0]
    assert w["condition"] == "c:center" and (w["r"], w["s"]) == (2, 1)
    assert w["labels"] == ["e2-e3#0", "e1-e4#0", "e1-e2#0"]


def test_corrupted_layer_bracket_is_reported():
    D = layer_decomposition(_sl4_fixture("e2-e3", "e1-e2", "e1-e4"))
    rep = check_setup(D)
    assert not rep.ok
    assert rep.witnesses


def test_pairing_on_first_layer():
    A = build_nilradical("sl(4,R)")
    D = layer_decomposition(A)
    res = heisenberg_pairing_check(A, D.l[0])
    assert res.ok and len(res.summands) == 1
    k, u, up = res.summands[0]
    assert A.basis[k].label == "e1-e4#0" and len(u) == len(up) == 2


def test_pairing_su21_single_summand():
    res = heisenberg_pairing_check(build_nilradical("su(2,1)"))
    assert res.ok and len(res.summands) == 1 and res.abelian == []


def test_pairing_refuses_wide_center():
    A = build_nilradical("sl(3,H)")
    D = layer_decomposition(A)
    res = heisenberg_pairing_check(A, D.l[0])
    assert not res.ok and res.failed == "iii"


def test_pairing_names_failed_hypothesis():
    same = NilpotentAlgebra.from_brackets("f1", list("abcde"), {(0, 2): {4: 1}, (1, 3): {4: 1}, (0, 1): {4: 1}},
                                          roots=[(1,), (1,), (1,), (1,), (2,)])
    assert heisenberg_pairing_check(same).failed == "i"
    cross = NilpotentAlgebra.from_brackets("f2", list("abcdef"), {(0, 1): {2: 1}, (3, 4): {5: 1}, (0, 4): {2: 1}},
                                           roots=[(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 2)])
    assert heisenberg_pairing_check(cross).failed == "ii"


def test_decomposition_json():
    d = layer_decomposition(build_nilradical("sl(4,R)")).to_json()
    assert d["betas"] == ["e1-e4", "e2-e3"]
    assert d["c"] == 8
