"""Layer Pfaffians, the Plancherel density and the modular-weight identities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .cascade import CascadeDecomposition
from .linalg import nullspace, solve
from .poly import SparsePoly
from .rootkit import RestrictedRootDatum, root_label


# ---------------------------------------------------------------------------
# variables on s*

def variables(D: CascadeDecomposition) -> list:
    """``(layer, basis index of z_r pivot)`` for each coordinate of ``s*``."""
    out = []
    for r, z in enumerate(D.z):
        for p in z.pivots:
            out.append((r, p))
    return out


def n_variables(D: CascadeDecomposition) -> int:
    return sum(z.dim for z in D.z)


def variable_roots(D: CascadeDecomposition) -> list:
    return [D.algebra.root(p) for _, p in variables(D)]


def variable_labels(D: CascadeDecomposition) -> list:
    return [f"λ{k + 1}" for k in range(len(variables(D)))]


def _offset(D, r: int) -> int:
    return sum(z.dim for z in D.z[:r])


def b_lambda_matrix(D: CascadeDecomposition, r: int) -> list:
    """Antisymmetric matrix of linear forms ``lambda([x_i, x_j])`` on ``v_r``.

    ``r`` counts from 1; the variables are all coordinates of ``s*`` so
    products over layers stay in one polynomial ring.
    """
    A = D.algebra
    z, v = D.z[r - 1], D.v[r - 1]
    nv = sum(x.dim for x in D.z)
    off = _offset(D, r - 1)
    idx = sorted(v.coords)
    M = [[SparsePoly(nv) for _ in idx] for _ in idx]
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            if a < b:
                out = A.bracket_basis(i, j)
                coeffs = {off + t: out.get(p, 0) for t, p in enumerate(z.pivots) if out.get(p, 0)}
                if coeffs:
                    M[a][b] = SparsePoly.linear(nv, coeffs)
                    M[b][a] = -M[a][b]
    return M


def pfaffian(M, nvars: int | None = None) -> SparsePoly:
    """Pfaffian by first-row expansion memoized on the set of remaining rows."""
    n = len(M)
    if n % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix")
    nvars = _nvars(M) if nvars is None else nvars
    if n == 0:
        return SparsePoly.const(nvars)
    memo = {0: SparsePoly.const(nvars)}

    def pf(mask: int) -> SparsePoly:
        if mask in memo:
            return memo[mask]
        rows = [i for i in range(n) if mask >> i & 1]
        i0 = rows[0]
        acc = SparsePoly(nvars)
        for pos, j in enumerate(rows[1:]):
            e = M[i0][j]
            if e.is_zero():
                continue
            sub = pf(mask & ~(1 << i0) & ~(1 << j))
            if sub.is_zero():
                continue
            term = e * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[mask] = acc
        return acc

    return pf((1 << n) - 1)


def _nvars(M) -> int:
    for row in M:
        for e in row:
            return e.nvars
    return 0


def pfaffian_matching_sum(M, nvars: int | None = None) -> SparsePoly:
    """Independent Pfaffian: sum over perfect matchings with permutation signs."""
    n = len(M)
    if n % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix")
    nvars = _nvars(M) if nvars is None else nvars
    total = SparsePoly(nvars)
    for perm in permutations(range(n)):
        pairs = [(perm[2 * k], perm[2 * k + 1]) for k in range(n // 2)]
        if any(a > b for a, b in pairs) or any(pairs[k][0] > pairs[k + 1][0] for k in range(len(pairs) - 1)):
            continue
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = SparsePoly.const(nvars, -1 if inv % 2 else 1)
        for a, b in pairs:
            term = term * M[a][b]
            if term.is_zero():
                break
        total = total + term
    return total


def det(M, nvars: int | None = None) -> SparsePoly:
    """Determinant by Laplace expansion along rows, memoized on used columns."""
    n = len(M)
    nvars = _nvars(M) if nvars is None else nvars
    memo = {}

    def minor(row: int, used: int) -> SparsePoly:
        if row == n:
            return SparsePoly.const(nvars)
        if used in memo:
            return memo[used]
        acc = SparsePoly(nvars)
        free = 0
        for j in range(n):
            if used >> j & 1:
                continue
            e = M[row][j]
            if not e.is_zero():
                sub = minor(row + 1, used | 1 << j)
                if not sub.is_zero():
                    term = e * sub
                    acc = acc + (term if free % 2 == 0 else -term)
            free += 1
        memo[used] = acc
        return acc

    return minor(0, 0)


# ---------------------------------------------------------------------------
# density

def _cache(D) -> dict:
    return D.__dict__.setdefault("_pfaff_cache", {})


def layer_pfaffian(D: CascadeDecomposition, r: int) -> SparsePoly:
    cache = _cache(D)
    if ("pf", r) not in cache:
        cache[("pf", r)] = pfaffian(b_lambda_matrix(D, r), n_variables(D))
    return cache[("pf", r)]


def plancherel_density(D: CascadeDecomposition) -> SparsePoly:
    """``P = prod_r Pf(b_lambda_r)`` on ``s*``."""
    out = SparsePoly.const(sum(z.dim for z in D.z))
    for r in range(1, D.m + 1):
        out = out * layer_pfaffian(D, r)
    return out


def formal_degree(D: CascadeDecomposition, lam) -> Fraction:
    val = plancherel_density(D).evaluate(lam)
    if val == 0:
        raise ValueError("Pf-singular point: P(lambda) = 0")
    return abs(val)


def scaling_holds(P: SparsePoly, factor=3) -> bool:
    """``P(c x) == c^deg P(x)`` as polynomials."""
    k = P.degree
    return P.scale_vars([factor] * P.nvars) == P * Fraction(factor) ** max(k, 0)


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class WeightVector:
    """Exponents ``w_r`` of a character ``prod_r exp(beta_r(xi))^{w_r}``."""

    exponents: tuple

    def __add__(self, other):
        return WeightVector(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def to_json(self):
        return [str(x) for x in self.exponents]


def beta_coordinates(D: CascadeDecomposition, functional) -> WeightVector | None:
    """Express a functional on ``a`` as a combination of the betas, if possible."""
    cols = D.betas
    rows = [[b[i] for b in cols] for i in range(len(functional))]
    sol = solve(rows, list(functional))
    return None if sol is None else WeightVector(tuple(sol))


def _root_sum(D, S) -> tuple:
    A = D.algebra
    dim = len(D.betas[0])
    tot = [Fraction(0)] * dim
    for i in sorted(S.coords):
        tot = [a + b for a, b in zip(tot, A.root(i))]
    return tuple(tot)


def ad_trace_weights(D: CascadeDecomposition) -> dict:
    """Trace of ``ad(xi)`` on each layer and on n, summed over root spaces.

    Each is compared with the closed form ``1/2(dim l_r + dim z_r) beta_r``.
    """
    m = D.m
    out = {"l": [], "n": None, "mismatches": []}
    total = WeightVector((Fraction(0),) * m)
    for r in range(m):
        w = beta_coordinates(D, _root_sum(D, D.l[r]))
        want = tuple(Fraction(D.l[r].dim + D.z[r].dim, 2) if k == r else Fraction(0) for k in range(m))
        if w is None or w.exponents != want:
            out["mismatches"].append(r + 1)
        out["l"].append(w)
        total = total + WeightVector(want)
    wn = beta_coordinates(D, _root_sum(D, D.ambient))
    if wn != total:
        out["mismatches"].append("n")
    out["n"] = wn
    return out


def quasicenter_det(D: CascadeDecomposition) -> SparsePoly:
    """Product of the ``s*`` coordinates dual to each ``g_{beta_r}``."""
    vs = variables(D)
    nv = len(vs)
    out = SparsePoly.const(nv)
    for k, (r, p) in enumerate(vs):
        if D.algebra.root(p) == D.betas[r]:
            out = out * SparsePoly.var(nv, k)
    return out


def polynomial_weight(D: CascadeDecomposition, P: SparsePoly) -> WeightVector | None:
    """Weight of ``P`` under ``lambda_k -> exp(root_k(xi)) lambda_k``.

    None when the monomials carry different weights or the weight is not a
    combination of the betas.
    """
    ws = P.monomial_weights(variable_roots(D))
    if len(ws) != 1:
        return None
    (w,) = ws
    if not w:
        w = (Fraction(0),) * len(D.betas[0])
    return beta_coordinates(D, w)


def semiinvariance_check(D: CascadeDecomposition) -> dict:
    m = D.m
    Pf = plancherel_density(D)
    Det = quasicenter_det(D)
    n, s = D.ambient.dim, D.s.dim
    dims_pf = WeightVector(tuple(Fraction(x) for x in D.d))
    dims_det = WeightVector(tuple(Fraction(z.dim) for z in D.z))
    modular = WeightVector(tuple(Fraction(l.dim + z.dim, 2) for l, z in zip(D.l, D.z)))
    sym_pf = polynomial_weight(D, Pf)
    sym_det = polynomial_weight(D, Det)
    traces = ad_trace_weights(D)
    report = {
        "half_integral": all((l.dim + z.dim) % 2 == 0 for l, z in zip(D.l, D.z)),
        "degree": (Pf * Det).degree,
        "expected_degree": Fraction(n + s, 2),
        "dims": {"pf": dims_pf, "det": dims_det, "modular": modular},
        "symbolic": {"pf": sym_pf, "det": sym_det,
                     "pf_det": polynomial_weight(D, Pf * Det), "trace_n": traces["n"]},
        "mult_flags": [r + 1 for r, b in enumerate(D.betas)
                       if D.datum is not None and D.datum.mult.get(b, 1) > 1],
    }
    report["degree_ok"] = report["degree"] == report["expected_degree"]
    report["dims_ok"] = dims_pf + dims_det == modular
    report["symbolic_ok"] = (sym_pf == dims_pf and sym_det == dims_det
                             and report["symbolic"]["pf_det"] == modular
                             and traces["n"] == modular and not traces["mismatches"])
    report["ok"] = (report["half_integral"] and report["degree_ok"]
                    and report["dims_ok"] and report["symbolic_ok"])
    return report


def dp_symbol(D: CascadeDecomposition):
    """Symbol ``Pf * Det`` of the Dixmier-Pukanszky operator with metadata."""
    sym = plancherel_density(D) * quasicenter_det(D)
    meta = {"degree": sym.degree,
            "expected_degree": Fraction(D.ambient.dim + D.s.dim, 2),
            "weight": polynomial_weight(D, sym)}
    return sym, meta


def a_diamond(D: CascadeDecomposition, R: RestrictedRootDatum | None = None) -> list:
    """Basis of ``{xi in a : beta_r(xi) = 0 for all r}``, ``a`` the root span."""
    R = D.datum if R is None else R
    basis = R.root_span_basis()
    eqs = [[sum(x * y for x, y in zip(b, v)) for v in basis] for b in D.betas]
    sols = nullspace(eqs, len(basis))
    out = []
    for c in sols:
        out.append(tuple(sum(a * v[i] for a, v in zip(c, basis)) for i in range(len(basis[0]))))
    return out


def density_report(D: CascadeDecomposition) -> dict:
    P = plancherel_density(D)
    return {"algebra": D.algebra.name, "P": P.format(), "terms": P.to_json(),
            "degree": max(P.degree, 0), "c": D.c, "d": D.d,
            "variables": [root_label(x) for x in variable_roots(D)]}
