"""Exact sparse multivariate polynomials with rational coefficients."""
from __future__ import annotations

from fractions import Fraction


class SparsePoly:
    """Polynomial in ``nvars`` variables as ``{exponent tuple: Fraction}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            if c != 0:
                if len(e) != nvars:
                    raise ValueError("exponent length does not match nvars")
                self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def const(cls, nvars: int, c=1) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int, c=1) -> "SparsePoly":
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): c})

    @classmethod
    def linear(cls, nvars: int, coeffs: dict) -> "SparsePoly":
        """``sum c_k x_k`` from ``{k: c_k}``."""
        out = {}
        for k, c in coeffs.items():
            e = [0] * nvars
            e[k] = 1
            out[tuple(e)] = c
        return cls(nvars, out)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different variable spaces")
            return other
        return SparsePoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = Fraction(other)
            return SparsePoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePoly.const(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self == SparsePoly.const(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def evaluate(self, point) -> Fraction:
        point = [Fraction(p) for p in point]
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def scale_vars(self, factors) -> "SparsePoly":
        """Substitute ``x_k -> f_k x_k``."""
        factors = [Fraction(f) for f in factors]
        out = {}
        for e, c in self.terms.items():
            t = c
            for f, k in zip(factors, e):
                if k:
                    t *= f ** k
            out[e] = t
        return SparsePoly(self.nvars, out)

    def monomial_weights(self, var_weights) -> set:
        """Set of weights ``sum e_k w_k`` over the monomials (vectors as tuples)."""
        out = set()
        for e in self.terms:
            w = None
            for k, x in enumerate(e):
                if x:
                    add = tuple(x * a for a in var_weights[k])
                    w = add if w is None else tuple(a + b for a, b in zip(w, add))
            if w is None:
                w = tuple(Fraction(0) for _ in var_weights[0]) if var_weights else ()
            out.add(w)
        return out

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in sorted(self.terms.items())]

    def format(self, names=None) -> str:
        names = names or [f"λ{k + 1}" for k in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SparsePoly({self.format()})"
