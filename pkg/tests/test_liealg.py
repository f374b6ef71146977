from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from cascadekit.linalg import Subspace
from cascadekit.liealg import (NilpotentAlgebra, bracket_span, bracket_witness, build_nilradical,
                               center, chevalley_constants, chevalley_nilradical, is_ideal,
                               is_subalgebra, lower_central_series)
from cascadekit.rootkit import build_root_system


def root_pair(root):
    """(i, j) for e_i - e_j, 1-based."""
    i = next(k for k, x in enumerate(root) if x == 1)
    j = next(k for k, x in enumerate(root) if x == -1)
    return i, j


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_sln_brackets_match_matrix_commutators(n, elementary):
    A = build_nilradical(f"sl({n},R)")
    assert A.dim == n * (n - 1) // 2
    mats = []
    for i in range(A.dim):
        a, b = root_pair(A.root(i))
        mats.append(elementary(n, a + 1, b + 1))
    for i, j in product(range(A.dim), repeat=2):
        c = mats[i] @ mats[j] - mats[j] @ mats[i]
        got = A.bracket_basis(i, j)
        expect = {k: c[np.nonzero(mats[k])][0] for k in range(A.dim) if np.any(c[np.nonzero(mats[k])])}
        assert set(got) == set(expect)
        for k in got:
            assert abs(got[k]) == abs(Fraction(expect[k]))


def test_sl3_heisenberg_bracket():
    A = build_nilradical("sl(3,R)")
    labels = [b.label for b in A.basis]
    i, j, k = (labels.index(x + "#0") for x in ("e1-e2", "e2-e3", "e1-e3"))
    assert abs(A.bracket_basis(i, j)[k]) == 1
    assert A.bracket_basis(i, k) == {} and A.bracket_basis(j, k) == {}


def _numeric_center_dim(A):
    n = A.dim
    rows = []
    for i in range(n):
        for j in range(n):
            row = np.zeros(n)
            for k in range(n):
                row[k] = float(A.bracket_basis(k, i).get(j, 0))
            rows.append(row)
    return n - np.linalg.matrix_rank(np.array(rows))


@pytest.mark.parametrize("name", ["sl(3,R)", "sl(4,R)", "sl(5,R)", "split-B(3)", "split-G2",
                                  "su(2,1)", "sl(3,H)", "so(2,5)", "sp(3,R)"])
def test_center_matches_numeric_rank(name):
    A = build_nilradical(name)
    assert center(A).dim == _numeric_center_dim(A)


def test_sl4_lower_central_series():
    A = build_nilradical("sl(4,R)")
    assert [S.dim for S in lower_central_series(A)] == [6, 3, 1, 0]
    assert center(A).dim == 1


def test_abelian_algebra():
    A = NilpotentAlgebra.from_brackets("ab3", ["x", "y", "z"], {})
    assert center(A).dim == 3
    assert [S.dim for S in lower_central_series(A)] == [3, 0]


def test_from_brackets_heisenberg():
    H = NilpotentAlgebra.from_brackets("h3", ["x", "y", "z"], {(0, 1): {2: 1}})
    assert H.bracket_basis(1, 0) == {2: Fraction(-1)}
    assert center(H) == Subspace.from_indices(3, [2])
    assert not H.jacobi_violations()
    assert not H.antisymmetry_violations()


@pytest.mark.parametrize("name", ["sl(6,R)", "split-B(4)", "split-C(3)", "split-D(4)", "split-F4",
                                  "split-E6", "su(2,3)", "sl(4,H)", "so(3,4)", "su(2,4)"])
def test_jacobi_grading_integrality(name):
    A = build_nilradical(name)
    assert not A.jacobi_violations()
    assert not A.grading_violations()
    assert not A.antisymmetry_violations()
    assert A.is_integral()


def test_corrupted_jacobi_detected():
    A = build_nilradical("sl(4,R)")
    labels = [b.label for b in A.basis]
    i, j = labels.index("e1-e2#0"), labels.index("e2-e3#0")
    k = labels.index("e1-e3#0")
    bad = A.with_constant(i, j, k, 2)
    assert bad.jacobi_violations()


def test_chevalley_constants_string_property():
    # |N(a,b)| = p + 1 with p the largest integer such that b - p a is a root
    for t, n in [("B", 3), ("C", 3), ("G2", None), ("D", 4)]:
        R = build_root_system(t, n) if n else build_root_system(t)
        N = chevalley_constants(R)
        roots = set(R.roots)
        for a, b in product(R.positive_roots, repeat=2):
            if tuple(x + y for x, y in zip(a, b)) not in roots:
                continue
            v = N(a, b)
            p = 0
            while tuple(y - (p + 1) * x for x, y in zip(a, b)) in roots:
                p += 1
            assert abs(v) == p + 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_backends_agree_on_sln(n):
    from cascadekit.rootkit import parse_spec
    from cascadekit.liealg import _matrix_algebra
    from cascadekit.rootkit import restricted_datum
    spec = parse_spec(f"sl({n},R)")
    M = _matrix_algebra(spec, restricted_datum(spec))
    C = build_nilradical(spec)
    assert [M.root(i) for i in range(M.dim)] == [C.root(i) for i in range(C.dim)]
    for i, j in product(range(C.dim), repeat=2):
        a, b = C.bracket_basis(i, j), M.bracket_basis(i, j)
        assert set(a) == set(b)
        assert all(abs(a[k]) == abs(b[k]) for k in a)


def test_chevalley_nilradical_dims():
    assert chevalley_nilradical("A", 4).dim == 10
    assert chevalley_nilradical("E8").dim == 120


def test_subspace_operations():
    A = build_nilradical("sl(4,R)")
    W = A.whole()
    D = bracket_span(A, W, W)
    assert D.dim == 3
    assert is_subalgebra(A, D) and is_ideal(A, D)
    labels = [b.label for b in A.basis]
    S = Subspace.from_indices(6, [labels.index("e1-e2#0")])
    assert is_subalgebra(A, S) and not is_ideal(A, S)
    w = bracket_witness(A, W, W, Subspace.zero(6))
    assert w is not None
    assert bracket_witness(A, W, W, D) is None


def test_json_is_deterministic():
    A = build_nilradical("su(2,1)")
    assert A.dumps() == build_nilradical("su(2,1)").dumps()
    d = A.to_json()
    assert len(d["basis"]) == 3
