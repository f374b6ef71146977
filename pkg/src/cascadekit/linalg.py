"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`. Everything here is exact;
there is no pivoting tolerance anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum((a * b for a, b in zip(x, y)), ZERO)


def add(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def is_zero(x: Sequence) -> bool:
    return all(a == 0 for a in x)


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def rref(rows: Iterable[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` with zero rows dropped.
    """
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        if inv != 1:
            m[r] = [v * inv for v in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row = m[i]
                m[i] = [a - f * b for a, b in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int, return_free: bool = False):
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows.

    Basis vector ``k`` is 1 on the k-th free column and 0 on the others; with
    ``return_free`` the free columns are returned as well.
    """
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return (basis, free) if return_free else basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """One solution of ``A x = b`` or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [tuple(r) + (Fraction(b),) for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coefficients of ``v`` in the (independent) ``basis``, or None."""
    if not basis:
        return () if is_zero(v) else None
    cols = [[b[i] for b in basis] for i in range(len(v))]
    return solve(cols, v)


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Bareiss fraction-free determinant."""
    n = len(matrix)
    if n == 0:
        return ONE
    m = [list(map(Fraction, r)) for r in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return ZERO
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class Subspace:
    """A subspace of Q^n held in reduced row echelon form.

    ``coords`` is set when the subspace is spanned by standard basis vectors,
    which is the common case for root-graded algebras and enables fast
    membership tests.
    """

    __slots__ = ("n", "rows", "pivots", "coords")

    def __init__(self, n: int, rows: Iterable[Sequence] = ()):
        self.n = n
        red, piv = rref(list(rows), n)
        self.rows = red
        self.pivots = piv
        if all(sum(1 for a in r if a != 0) == 1 for r in red):
            self.coords = frozenset(piv)
        else:
            self.coords = None

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "Subspace":
        s = cls.__new__(cls)
        s.n = n
        idx = sorted(set(indices))
        s.rows = [unit(n, i) for i in idx]
        s.pivots = idx
        s.coords = frozenset(idx)
        return s

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls.from_indices(n, ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Sequence) -> bool:
        if self.coords is not None:
            return all(a == 0 or i in self.coords for i, a in enumerate(v))
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c != 0:
                w = [a - c * b for a, b in zip(w, row)]
        return all(a == 0 for a in w)

    def residual(self, v: Sequence) -> Vector:
        """Component of ``v`` along non-pivot coordinates after reduction."""
        w = list(map(Fraction, v))
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c != 0:
                w = [a - c * b for a, b in zip(w, row)]
        return tuple(w)

    def contains_space(self, other: "Subspace") -> bool:
        if self.coords is not None and other.coords is not None:
            return other.coords <= self.coords
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.n == other.n
                and self.pivots == other.pivots and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, tuple(self.rows)))

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.coords is not None and other.coords is not None:
            return Subspace.from_indices(self.n, self.coords | other.coords)
        return Subspace(self.n, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.coords is not None and other.coords is not None:
            return Subspace.from_indices(self.n, self.coords & other.coords)
        # x = sum a_i r_i = sum b_j s_j
        k = self.dim
        cols = list(self.rows) + [scale(-1, s) for s in other.rows]
        if not cols:
            return Subspace.zero(self.n)
        system = [[c[i] for c in cols] for i in range(self.n)]
        sols = nullspace(system, len(cols))
        out = []
        for s in sols:
            v = [ZERO] * self.n
            for a, r in zip(s[:k], self.rows):
                if a != 0:
                    v = [x + a * y for x, y in zip(v, r)]
            out.append(v)
        return Subspace(self.n, out)

    def is_zero(self) -> bool:
        return not self.rows

    def __repr__(self):
        if self.coords is not None:
            return f"Subspace(n={self.n}, coords={sorted(self.coords)})"
        return f"Subspace(n={self.n}, dim={self.dim})"
