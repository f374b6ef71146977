"""Nilradicals as graded nilpotent Lie algebras with exact structure constants.

Two backends build the same kind of object:

* ``chevalley`` for split forms: one basis vector per positive root, integer
  structure constants ``N(a, b) = +-(p + 1)`` with signs fixed by declaring
  every extraspecial pair positive (extraspecial pairs taken in the order of
  the positive roots).
* ``matrix`` for the matrix models in :mod:`cascadekit.matrixforms`: basis
  vectors are rational matrices spanning root spaces, brackets are matrix
  commutators re-expressed in that basis.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .linalg import ZERO, Subspace, nullspace, unit
from .rootkit import (RealFormSpec, RestrictedRootDatum, inner, is_positive, parse_spec,
                      restricted_datum, root_label)


@dataclass(frozen=True, order=True)
class BasisVector:
    position: int  # index of the root in the ordered positive roots
    slot: int
    root: tuple = field(compare=False)

    @property
    def label(self) -> str:
        return f"{root_label(self.root)}#{self.slot}"


@dataclass
class NilpotentAlgebra:
    """Basis, sparse bracket table ``(i, j) -> {k: c}`` and root grading.

    The table holds both orders of every nonzero pair.
    """

    name: str
    basis: list
    table: dict
    backend: str = "explicit"
    datum: RestrictedRootDatum | None = None
    matrices: list | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def root(self, i: int):
        return self.basis[i].root

    def bracket_basis(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def bracket(self, u, v) -> tuple:
        out = [ZERO] * self.dim
        nu = [(i, a) for i, a in enumerate(u) if a != 0]
        nv = [(j, b) for j, b in enumerate(v) if b != 0]
        for i, a in nu:
            for j, b in nv:
                for k, c in self.table.get((i, j), {}).items():
                    out[k] += a * b * c
        return tuple(out)

    def indices_for_roots(self, roots) -> list:
        roots = set(roots)
        return [i for i, b in enumerate(self.basis) if b.root in roots]

    def span(self, roots) -> Subspace:
        """Graded subspace spanned by the given root spaces."""
        return Subspace.from_indices(self.dim, self.indices_for_roots(roots))

    def whole(self) -> Subspace:
        return Subspace.from_indices(self.dim, range(self.dim))

    @property
    def structure_constants(self):
        for (i, j), out in sorted(self.table.items()):
            for k, c in sorted(out.items()):
                yield i, j, k, c

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for *_, c in self.structure_constants)

    def with_constant(self, i: int, j: int, k: int, value) -> "NilpotentAlgebra":
        """Copy with ``c^k_{ij}`` (and the antisymmetric partner) overwritten."""
        table = {key: dict(v) for key, v in self.table.items()}
        for (a, b, s) in ((i, j, 1), (j, i, -1)):
            entry = table.setdefault((a, b), {})
            entry[k] = s * Fraction(value)
            if entry[k] == 0:
                del entry[k]
            if not entry:
                del table[(a, b)]
        return replace(self, name=self.name + "*", table=table)

    @classmethod
    def from_brackets(cls, name: str, labels, brackets: dict, roots=None) -> "NilpotentAlgebra":
        """Build from ``{(i, j): {k: c}}`` with i < j; grading optional."""
        n = len(labels)
        if roots is None:
            roots = [tuple(Fraction(int(a == i)) for a in range(n)) for i in range(n)]
        basis = [BasisVector(i, 0, tuple(map(Fraction, r))) for i, r in enumerate(roots)]
        table = {}
        for (i, j), out in brackets.items():
            out = {k: Fraction(c) for k, c in out.items() if c != 0}
            if out:
                table[(i, j)] = out
                table[(j, i)] = {k: -c for k, c in out.items()}
        return cls(name, basis, table)

    # invariants ----------------------------------------------------------

    def antisymmetry_violations(self) -> list:
        bad = []
        for (i, j), out in self.table.items():
            back = self.table.get((j, i), {})
            if any(back.get(k, ZERO) != -c for k, c in out.items()) or i == j:
                bad.append((i, j))
        return bad

    def jacobi_violations(self, limit: int = 5) -> list:
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = {}
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, x in self.table.get((a, b), {}).items():
                            for t, y in self.table.get((m, c), {}).items():
                                acc[t] = acc.get(t, ZERO) + x * y
                    if any(v != 0 for v in acc.values()):
                        bad.append((i, j, k))
                        if len(bad) >= limit:
                            return bad
        return bad

    def grading_violations(self) -> list:
        bad = []
        for (i, j), out in self.table.items():
            target = tuple(a + b for a, b in zip(self.root(i), self.root(j)))
            for k in out:
                if self.root(k) != target:
                    bad.append((i, j, k))
        return bad

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "backend": self.backend,
            "basis": [b.label for b in self.basis],
            "brackets": [[i, j, k, str(c)] for i, j, k, c in self.structure_constants if i < j],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Chevalley backend

def chevalley_constants(R: RestrictedRootDatum):
    """Function ``N(a, b)`` on pairs of roots with ``a + b`` a root."""
    pos = R.positive_roots
    order = R.index
    roots = R.roots

    def plus(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(a):
        return tuple(-x for x in a)

    def norm(a):
        return inner(a, a)

    extraspecial = {}
    for xi in pos:
        for g in pos:
            d = tuple(x - y for x, y in zip(xi, g))
            if d in roots and is_positive(d):
                extraspecial[xi] = (g, d)
                break

    def p_of(a, b):
        p = 0
        v = tuple(y - x for x, y in zip(a, b))
        while v in roots:
            p += 1
            v = tuple(y - x for x, y in zip(a, v))
        return p

    @lru_cache(maxsize=None)
    def N(a, b):
        s = plus(a, b)
        if s not in roots:
            return 0
        pa, pb = is_positive(a), is_positive(b)
        if pa and pb:
            g, d = extraspecial[s]
            if (a, b) == (g, d):
                return p_of(g, d) + 1
            if (a, b) == (d, g):
                return -(p_of(g, d) + 1)
            ng, nd = neg(g), neg(d)
            t1 = Fraction(N(b, ng) * N(a, nd), norm(plus(b, ng))) if plus(b, ng) in roots else 0
            t2 = Fraction(N(ng, a) * N(b, nd), norm(plus(a, ng))) if plus(a, ng) in roots else 0
            val = norm(s) / Fraction(N(g, d)) * (t1 + t2)
            assert val.denominator == 1
            return int(val)
        if not pa and not pb:
            return -N(neg(a), neg(b))
        c = neg(s)
        # rotate the zero-sum triple (a, b, c) onto a same-sign pair
        if is_positive(b) == is_positive(c):
            val = norm(c) / norm(a) * N(b, c)
        else:
            val = norm(c) / norm(b) * N(c, a)
        assert val.denominator == 1
        return int(val)

    return N


def _chevalley_algebra(name: str, R: RestrictedRootDatum) -> NilpotentAlgebra:
    N = chevalley_constants(R)
    pos = R.positive_roots
    idx = R.index
    basis = [BasisVector(i, 0, r) for i, r in enumerate(pos)]
    table = {}
    for i, a in enumerate(pos):
        for j, b in enumerate(pos):
            s = tuple(x + y for x, y in zip(a, b))
            if s in idx:
                table[(i, j)] = {idx[s]: Fraction(N(a, b))}
    return NilpotentAlgebra(name, basis, table, "chevalley", R)


def _matrix_algebra(spec: RealFormSpec, R: RestrictedRootDatum) -> NilpotentAlgebra:
    from .matrixforms import commutator, matrix_model

    model = matrix_model(spec)
    basis, mats, start = [], [], {}
    for i, r in enumerate(R.positive_roots):
        start[r] = len(basis)
        for s, m in enumerate(model.root_spaces[r]):
            basis.append(BasisVector(i, s, r))
            mats.append(m)
    table = {}
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if i == j:
                continue
            c = commutator(mats[i], mats[j])
            s = tuple(x + y for x, y in zip(bi.root, bj.root))
            if not c:
                continue
            if s not in start:
                raise AssertionError(f"commutator left the root spaces at {s}")
            coords = model.coordinates(s, c)
            # the commutator must lie in the span of the root-space basis
            rebuilt = {}
            for k, x in enumerate(coords):
                for key, v in model.root_spaces[s][k].items():
                    rebuilt[key] = rebuilt.get(key, ZERO) + x * v
            rebuilt = {key: v for key, v in rebuilt.items() if v != 0}
            if rebuilt != c:
                raise AssertionError("commutator not in target root space")
            out = {start[s] + k: x for k, x in enumerate(coords) if x != 0}
            if out:
                table[(i, j)] = out
    return NilpotentAlgebra(spec.name, basis, table, "matrix", R, mats)


@lru_cache(maxsize=None)
def _build(spec: RealFormSpec) -> NilpotentAlgebra:
    R = restricted_datum(spec)
    if spec.backend == "chevalley":
        return _chevalley_algebra(spec.name, R)
    return _matrix_algebra(spec, R)


def build_nilradical(spec: RealFormSpec | str) -> NilpotentAlgebra:
    """The nilradical of the minimal parabolic of a catalog real form."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    return _build(spec)


def chevalley_nilradical(type_label: str, rank: int | None = None) -> NilpotentAlgebra:
    from .rootkit import build_root_system

    R = build_root_system(type_label, rank)
    return _chevalley_algebra(f"split-{type_label}{'' if rank is None else rank}", R)


# ---------------------------------------------------------------------------
# subspace operations

def bracket_span(A: NilpotentAlgebra, S1: Subspace, S2: Subspace) -> Subspace:
    """Span of all brackets ``[x, y]`` with x in S1 and y in S2."""
    if S1.n != A.dim or S2.n != A.dim:
        raise ValueError("subspaces belong to a different algebra")
    out = []
    if S1.coords is not None and S2.coords is not None:
        seen = set()
        for i in S1.coords:
            for j in S2.coords:
                r = A.table.get((i, j))
                if r:
                    key = tuple(sorted(r.items()))
                    if key not in seen:
                        seen.add(key)
                        v = [ZERO] * A.dim
                        for k, c in r.items():
                            v[k] = c
                        out.append(v)
    else:
        for u in S1.rows:
            for v in S2.rows:
                w = A.bracket(u, v)
                if any(w):
                    out.append(w)
    return Subspace(A.dim, out)


def bracket_witness(A: NilpotentAlgebra, S1: Subspace, S2: Subspace, target: Subspace):
    """First basis pair whose bracket leaves ``target``, as ``(i, j, k)``.

    ``k`` is an offending output coordinate. Returns None when contained.
    """
    pairs = [(u, v) for u in S1.rows for v in S2.rows]
    for u, v in pairs:
        w = A.bracket(u, v)
        if any(w) and not target.contains(w):
            res = target.residual(w)
            i = next(t for t, a in enumerate(u) if a != 0)
            j = next(t for t, a in enumerate(v) if a != 0)
            k = next(t for t, a in enumerate(res) if a != 0)
            return (i, j, k)
    return None


def center(A: NilpotentAlgebra, S: Subspace | None = None) -> Subspace:
    """Center of ``A`` (or of the subalgebra ``S``) by exact null space."""
    S = A.whole() if S is None else S
    rows = S.rows
    if not rows:
        return Subspace.zero(A.dim)
    eqs = {}
    for u_idx, u in enumerate(rows):
        for t, s in enumerate(rows):
            w = A.bracket(u, s)
            for k, c in enumerate(w):
                if c != 0:
                    eqs.setdefault((u_idx, k), [ZERO] * len(rows))[t] += c
    sols = nullspace(list(eqs.values()), len(rows))
    vecs = []
    for c in sols:
        v = [ZERO] * A.dim
        for a, r in zip(c, rows):
            if a != 0:
                v = [x + a * y for x, y in zip(v, r)]
        vecs.append(v)
    return Subspace(A.dim, vecs)


def is_subalgebra(A: NilpotentAlgebra, S: Subspace) -> bool:
    return S.contains_space(bracket_span(A, S, S))


def is_ideal(A: NilpotentAlgebra, S: Subspace, ambient: Subspace | None = None) -> bool:
    ambient = A.whole() if ambient is None else ambient
    return S.contains_space(bracket_span(A, ambient, S))


def lower_central_series(A: NilpotentAlgebra, S: Subspace | None = None) -> list:
    """``[S, [S,S], [S,[S,S]], ..., 0]``; raises if it fails to reach zero."""
    S = A.whole() if S is None else S
    chain = [S]
    for _ in range(A.dim + 1):
        if chain[-1].is_zero():
            return chain
        chain.append(bracket_span(A, S, chain[-1]))
    raise RuntimeError(f"{A.name}: lower central series does not terminate")
