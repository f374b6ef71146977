"""Restricted root systems with multiplicities.

Roots are tuples of Fractions in the standard e-coordinate realization of each
type. Positivity is the lexicographic order on e-coordinates (first nonzero
coordinate positive), which fixes the simple system deterministically.
"""
from __future__ import annotations

import itertools
import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import ZERO, dot, is_zero, nullspace, rref, solve

Root = tuple  # tuple[Fraction, ...]

TYPES = ("A", "B", "C", "D", "BC", "G2", "F4", "E6", "E7", "E8")
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "BC": 1}


class CatalogError(ValueError):
    """Unknown algebra name or invalid type/rank pair."""


def _e(n, *pairs) -> Root:
    v = [ZERO] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def _closed_under_negation(pos):
    return set(pos) | {tuple(-c for c in r) for r in pos}


def _e8_roots():
    roots = set()
    for i, j in itertools.combinations(range(8), 2):
        for si in (1, -1):
            for sj in (1, -1):
                roots.add(_e(8, (i, si), (j, sj)))
    half = Fraction(1, 2)
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.add(tuple(half * s for s in signs))
    return roots


def _standard_roots(type_label: str, rank: int) -> set:
    """All roots (both signs) of the standard realization; no rank checks."""
    n = rank
    roots = set()
    if type_label == "A":
        for i, j in itertools.permutations(range(n + 1), 2):
            roots.add(_e(n + 1, (i, 1), (j, -1)))
        return roots
    if type_label in ("B", "C", "D", "BC"):
        for i, j in itertools.combinations(range(n), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.add(_e(n, (i, si), (j, sj)))
        for i in range(n):
            for s in (1, -1):
                if type_label in ("B", "BC"):
                    roots.add(_e(n, (i, s)))
                if type_label in ("C", "BC"):
                    roots.add(_e(n, (i, 2 * s)))
        return roots
    if type_label == "G2":
        for i, j in itertools.permutations(range(3), 2):
            roots.add(_e(3, (i, 1), (j, -1)))
        for i in range(3):
            j, k = [x for x in range(3) if x != i]
            for s in (1, -1):
                roots.add(_e(3, (i, 2 * s), (j, -s), (k, -s)))
        return roots
    if type_label == "F4":
        roots = _standard_roots("B", 4)
        half = Fraction(1, 2)
        for signs in itertools.product((1, -1), repeat=4):
            roots.add(tuple(half * s for s in signs))
        return roots
    if type_label in ("E6", "E7", "E8"):
        e8 = _e8_roots()
        normals = {"E8": [], "E7": [_e(8, (6, 1), (7, 1))],
                   "E6": [_e(8, (6, 1), (7, 1)), _e(8, (5, 1), (7, 1))]}[type_label]
        return {r for r in e8 if all(dot(r, w) == 0 for w in normals)}
    raise CatalogError(f"unknown root system type {type_label!r}")


def is_positive(v) -> bool:
    for c in v:
        if c != 0:
            return c > 0
    return False


def root_label(v) -> str:
    """Human-readable e-coordinate label, e.g. ``e1-e4`` or ``2e1``."""
    parts = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{coef}e{i + 1}"))
    if not parts:
        return "0"
    s = "".join(f"{sg}{t}" for sg, t in parts)
    return s[1:] if s.startswith("+") else s


def _sorted_positive(roots) -> list:
    return sorted((r for r in roots if is_positive(r)),
                  key=lambda r: tuple(-c for c in r))


@dataclass(frozen=True)
class RestrictedRootDatum:
    """A (possibly non-reduced) root system with root-space multiplicities."""

    type_label: str
    rank: int
    roots: frozenset
    mult: dict = field(compare=False)

    # positivity, simple roots and heights are derived deterministically

    @cached_property
    def ambient_dim(self) -> int:
        return len(next(iter(self.roots)))

    @cached_property
    def simple_roots(self) -> tuple:
        pos = _sorted_positive(self.roots)
        pos_set = set(pos)
        simple = []
        for a in pos:
            decomposable = any(
                tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos if b != a)
            if not decomposable:
                simple.append(a)
        return tuple(simple)

    @cached_property
    def _coeff_table(self) -> dict:
        simple = self.simple_roots
        cols = [[s[i] for s in simple] for i in range(self.ambient_dim)]
        table = {}
        for r in self.roots:
            x = solve(cols, r)
            if x is None:
                raise ValueError(f"root {root_label(r)} not in span of simple roots")
            table[r] = tuple(int(c) if c.denominator == 1 else c for c in x)
        return table

    def coefficients(self, alpha) -> tuple:
        """Coordinates of ``alpha`` in the simple roots."""
        return self._coeff_table[tuple(alpha)]

    def height(self, alpha) -> int:
        return sum(self.coefficients(alpha))

    @cached_property
    def positive_roots(self) -> tuple:
        pos = [r for r in self.roots if is_positive(r)]
        return tuple(sorted(pos, key=lambda r: (self.height(r), tuple(-c for c in r))))

    @cached_property
    def index(self) -> dict:
        return {r: i for i, r in enumerate(self.positive_roots)}

    @cached_property
    def nonmultipliable(self) -> frozenset:
        return frozenset(r for r in self.roots
                         if tuple(2 * c for c in r) not in self.roots)

    def is_root(self, v) -> bool:
        return tuple(v) in self.roots

    def is_positive_root(self, v) -> bool:
        v = tuple(v)
        return v in self.roots and is_positive(v)

    def inner(self, a, b) -> Fraction:
        return inner(a, b)

    def leq(self, a, b) -> bool:
        """Partial order: ``b - a`` is a nonnegative combination of simple roots."""
        ca, cb = self.coefficients(a), self.coefficients(b)
        return all(y >= x for x, y in zip(ca, cb))

    def reflect(self, beta, alpha) -> Root:
        k = 2 * inner(alpha, beta) / inner(beta, beta)
        return tuple(a - k * b for a, b in zip(alpha, beta))

    def is_irreducible(self) -> bool:
        simple = self.simple_roots
        if not simple:
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in range(len(simple)):
                if j not in seen and inner(simple[i], simple[j]) != 0:
                    seen.add(j)
                    frontier.append(j)
        return len(seen) == len(simple)

    def root_span_basis(self) -> list:
        return list(self.simple_roots)

    def to_json(self) -> dict:
        return {
            "type": self.type_label if self.type_label[-1].isdigit()
            else f"{self.type_label}{self.rank}",
            "positive_roots": [[str(c) for c in r] for r in self.positive_roots],
            "labels": [root_label(r) for r in self.positive_roots],
            "simple_roots": [root_label(r) for r in self.simple_roots],
            "mult": {root_label(r): self.mult[r] for r in self.positive_roots},
        }


def inner(a, b) -> Fraction:
    """Standard Euclidean pairing in e-coordinates."""
    return dot(a, b)


def _datum(type_label, rank, roots, mult=None) -> RestrictedRootDatum:
    pos = [r for r in roots if is_positive(r)]
    m = {r: 1 for r in roots} if mult is None else dict(mult)
    for r in pos:
        m.setdefault(tuple(-c for c in r), m[r])
    return RestrictedRootDatum(type_label, rank, frozenset(roots), m)


def build_root_system(type_label: str, rank: int | None = None) -> RestrictedRootDatum:
    """Standard realization of a root system with all multiplicities 1."""
    if type_label in ("G2", "F4", "E6", "E7", "E8"):
        expected = int(type_label[1])
        if rank is not None and rank != expected:
            raise CatalogError(f"{type_label} has rank {expected}, not {rank}")
        return _datum(type_label, expected, _standard_roots(type_label, expected))
    if type_label not in MIN_RANK:
        raise CatalogError(f"unknown root system type {type_label!r}")
    if rank is None or rank < MIN_RANK[type_label]:
        raise CatalogError(f"invalid rank {rank} for type {type_label}")
    return _datum(type_label, rank, _standard_roots(type_label, rank))


# ---------------------------------------------------------------------------
# Catalog of real forms

@dataclass(frozen=True)
class RealFormSpec:
    """A catalog entry: ``name`` is canonical, e.g. ``"su(2,3)"``."""

    name: str
    family: str
    parameters: tuple
    backend: str  # "chevalley" | "matrix"

    @property
    def matrix_size(self) -> int:
        p = self.parameters
        if self.family in ("su", "so"):
            return p[0] + p[1]
        if self.family in ("sp", "slH"):
            return 2 * p[0]
        if self.family == "sl":
            return p[0]
        return 0


_SPLIT_TYPES = {"A": 1, "B": 2, "C": 3, "D": 4}
_MAX_SPLIT_RANK = 8
_MAX_MATRIX_SIZE = 10


def _matrix_label(family, params):
    """Type label and rank of the restricted root system of a matrix form."""
    if family == "sl":
        return "A", params[0] - 1
    if family == "slH":
        return "A", params[0] - 1
    if family == "sp":
        return "C", params[0]
    p, q = params
    if family == "su":
        return ("C", p) if p == q else ("BC", p)
    if family == "so":
        return ("D", p) if p == q else ("B", p)
    raise CatalogError(family)


def _extra_catalog() -> dict:
    path = os.environ.get("CASCADEKIT_CATALOG")
    if not path:
        return {}
    with open(path) as fh:
        entries = json.load(fh)
    out = {}
    for e in entries:
        t, r = e["type"], int(e["rank"])
        build_root_system(t, r)
        out[e["name"]] = (t, r)
    return out


def parse_spec(text: str) -> RealFormSpec:
    """Resolve a catalog string such as ``"sl(4,R)"`` or ``"split-B(3)"``."""
    s = text.replace(" ", "")
    extra = _extra_catalog()
    if s in extra:
        t, r = extra[s]
        return RealFormSpec(s, "split", (t, r), "chevalley")
    m = re.fullmatch(r"split-(G2|F4|E6|E7|E8)", s)
    if m:
        t = m.group(1)
        return RealFormSpec(s, "split", (t, int(t[1])), "chevalley")
    m = re.fullmatch(r"split-([ABCD])\((\d+)\)", s)
    if m:
        t, r = m.group(1), int(m.group(2))
        if not _SPLIT_TYPES[t] <= r <= _MAX_SPLIT_RANK:
            raise CatalogError(f"{s}: rank out of catalog range")
        return RealFormSpec(s, "split", (t, r), "chevalley")
    m = re.fullmatch(r"(sl|su|so|sp)\((\d+),(\d+|R|H)\)", s)
    if not m:
        raise CatalogError(f"unknown algebra {text!r}")
    fam, a, b = m.group(1), int(m.group(2)), m.group(3)
    if fam == "sl" and b == "R":
        spec = RealFormSpec(s, "sl", (a,), "matrix")
        ok = a >= 2
    elif fam == "sl" and b == "H":
        spec = RealFormSpec(s, "slH", (a,), "matrix")
        ok = a >= 2
    elif fam == "sp" and b == "R":
        spec = RealFormSpec(s, "sp", (a,), "matrix")
        ok = a >= 1
    elif fam in ("su", "so") and b.isdigit():
        p, q = a, int(b)
        if p > q:
            p, q = q, p
        spec = RealFormSpec(f"{fam}({p},{q})", fam, (p, q), "matrix")
        ok = p >= 1
        if fam == "so":
            ok = ok and q >= 2 and (p, q) != (2, 2) and not (p == q and p < 3)
    else:
        raise CatalogError(f"unknown algebra {text!r}")
    if not ok or spec.matrix_size > _MAX_MATRIX_SIZE:
        raise CatalogError(f"{text}: outside catalog range")
    return spec


def catalog(max_split_rank: int = _MAX_SPLIT_RANK, max_matrix_size: int = _MAX_MATRIX_SIZE,
            exceptional: tuple = ("G2", "F4")) -> list:
    """All catalog entry names within the given bounds, in a fixed order."""
    names = []
    for t, lo in _SPLIT_TYPES.items():
        names += [f"split-{t}({r})" for r in range(lo, max_split_rank + 1)]
    names += [f"split-{t}" for t in exceptional]
    for n in range(2, max_matrix_size + 1):
        names.append(f"sl({n},R)")
    for n in range(1, max_matrix_size + 1):
        for p in range(1, n // 2 + 1):
            names.append(f"su({p},{n - p})")
    for n in range(3, max_matrix_size + 1):
        for p in range(1, n // 2 + 1):
            q = n - p
            if (p, q) == (2, 2) or (p == q and p < 3):
                continue
            names.append(f"so({p},{q})")
    for n in range(1, max_matrix_size // 2 + 1):
        names.append(f"sp({n},R)")
    for n in range(2, max_matrix_size // 2 + 1):
        names.append(f"sl({n},H)")
    return names


def spec_label(spec: RealFormSpec) -> tuple:
    if spec.backend == "chevalley":
        return spec.parameters
    return _matrix_label(spec.family, spec.parameters)


def restricted_datum(spec: RealFormSpec | str) -> RestrictedRootDatum:
    """Restricted roots of a catalog real form, with multiplicities.

    Matrix-backend multiplicities are measured on the matrix model, and the
    resulting root set is checked against the standard realization.
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    t, r = spec_label(spec)
    if spec.backend == "chevalley":
        return build_root_system(t, r)
    from .matrixforms import matrix_model

    model = matrix_model(spec)
    mult = {alpha: len(vs) for alpha, vs in model.root_spaces.items()}
    roots = set(mult)
    expected = _standard_roots(t, r)
    if roots != expected:
        raise AssertionError(f"{spec.name}: measured roots do not form {t}{r}")
    return _datum(t, r, roots, mult)
