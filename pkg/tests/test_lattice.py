from fractions import Fraction

import pytest

from cascadekit.cascade import layer_decomposition
from cascadekit.lattice import (LatticeSpec, box_for, lattice_points_checked, multiplicities,
                                rationality_check)
from cascadekit.liealg import build_nilradical
from cascadekit.pfaff import plancherel_density
from cascadekit.poly import SparsePoly
from cascadekit.suites import lattice_checks


def test_heisenberg3_table():
    D = layer_decomposition(build_nilradical("split-A(2)"))
    assert rationality_check(D)["ok"]
    rows = multiplicities(LatticeSpec(D), plancherel_density(D), 3)
    assert rows == [((n,), abs(n)) for n in range(-3, 4) if n]


def test_sl4_table():
    D = layer_decomposition(build_nilradical("split-A(3)"))
    rows = multiplicities(LatticeSpec(D), plancherel_density(D), 2)
    assert rows == [((a, b), a * a) for a in range(-2, 3) for b in range(-2, 3) if a]
    assert LatticeSpec(D).layer_ranks() == [1, 1]


def test_box_size():
    assert box_for(1000, 1) == 500
    assert box_for(1000, 2) == 16
    assert (2 * box_for(1000, 3) + 1) ** 3 >= 1000
    assert lattice_points_checked(SparsePoly.var(2, 0), 16) == 1089


@pytest.mark.parametrize("name", ["split-A(3)", "split-B(3)", "split-C(3)", "split-G2", "split-D(4)"])
def test_lattice_suite(name):
    rep = lattice_checks(name)
    assert rep["ok"] and rep["points"] >= 1000


def test_matrix_backend_not_applicable():
    D = layer_decomposition(build_nilradical("su(2,1)"))
    rep = rationality_check(D)
    assert rep["status"] == "not-applicable" and rep["ok"] is None


def test_nonintegral_fixture_rejected():
    A = build_nilradical("split-A(2)")
    bad = A.with_constant(0, 1, 2, Fraction(1, 2))
    rep = rationality_check(layer_decomposition(bad, A.datum))
    assert rep["status"] == "not-applicable"


def test_nonintegral_multiplicity_raises():
    D = layer_decomposition(build_nilradical("split-A(2)"))
    with pytest.raises(ArithmeticError):
        multiplicities(LatticeSpec(D), SparsePoly.var(1, 0, Fraction(1, 2)), 2)


def test_non_graded_center_fails_with_witness():
    import dataclasses
    from cascadekit.linalg import Subspace
    D = layer_decomposition(build_nilradical("split-A(3)"))
    lab = [b.label for b in D.algebra.basis]
    row = [0] * 6
    row[lab.index("e1-e4#0")] = row[lab.index("e1-e2#0")] = 1
    bad = dataclasses.replace(D, z=[Subspace(6, [row]), D.z[1]])
    rep = rationality_check(bad)
    assert rep["status"] == "fail" and rep["subspace"] == "z_1"
    assert sorted(rep["witness"]) == ["0", "0", "0", "0", "1", "1"]
