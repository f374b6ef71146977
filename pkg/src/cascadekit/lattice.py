"""Rational structure and dual-lattice multiplicities.

The canonical basis of a Chevalley-backend nilradical spans the log-lattice
and is declared unimodular, so ``Lambda*_r`` is ``Z^{dim z_r}`` in the dual
coordinates and the Pfaffian in those coordinates is the normalized density.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cascade import CascadeDecomposition
from .poly import SparsePoly


@dataclass
class LatticeSpec:
    decomposition: CascadeDecomposition

    @property
    def algebra(self):
        return self.decomposition.algebra

    @property
    def rank(self) -> int:
        """Rank of the dual lattice on ``s*``."""
        return sum(z.dim for z in self.decomposition.z)

    def layer_ranks(self) -> list:
        return [z.dim for z in self.decomposition.z]


def rationality_check(D: CascadeDecomposition) -> dict:
    """Each l_r, n_r, z_r and s must be spanned by canonical basis vectors."""
    A = D.algebra
    if A.backend == "matrix":
        return {"status": "not-applicable", "ok": None,
                "reason": "lattice mode is restricted to the Chevalley backend"}
    if not A.is_integral():
        return {"status": "not-applicable", "ok": None,
                "reason": "structure constants are not all integers"}
    named = []
    for r in range(D.m):
        named += [(f"l_{r + 1}", D.l[r]), (f"z_{r + 1}", D.z[r]), (f"n_{r + 1}", D.n_r(r + 1))]
    named.append(("s", D.s))
    for name, S in named:
        if S.coords is None:
            row = next(x for x in S.rows if sum(1 for a in x if a != 0) > 1)
            return {"status": "fail", "ok": False, "subspace": name,
                    "witness": [str(a) for a in row]}
    return {"status": "pass", "ok": True}


def box_for(points: int, k: int) -> int:
    """Smallest ``b`` with ``(2b + 1)^k >= points``."""
    b = 1
    while (2 * b + 1) ** k < points:
        b += 1
    return b


def multiplicities(L: LatticeSpec, P: SparsePoly, box: int) -> list:
    """Rows ``(lambda, |P(lambda)|)`` over the box, skipping ``P(lambda) = 0``."""
    rows = []
    for lam in product(range(-box, box + 1), repeat=P.nvars):
        val = P.evaluate(lam)
        if val == 0:
            continue
        if Fraction(val).denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {val} at {lam}")
        rows.append((lam, abs(int(val))))
    return rows


def lattice_points_checked(P: SparsePoly, box: int) -> int:
    return (2 * box + 1) ** P.nvars
