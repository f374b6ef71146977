"""Kostant cascade, layer decomposition and setup verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .linalg import ZERO, Subspace, nullspace
from .liealg import NilpotentAlgebra, bracket_span, bracket_witness, center, is_ideal, is_subalgebra
from .rootkit import RestrictedRootDatum, root_label


def _maximal(R: RestrictedRootDatum, cands) -> list:
    return [a for a in cands if not any(b != a and R.leq(a, b) for b in cands)]


def cascade_with_candidates(R: RestrictedRootDatum):
    """Cascade roots together with the maximal candidates seen at each step."""
    if not R.is_irreducible():
        raise ValueError(f"{R.type_label}{R.rank}: reducible root system")
    betas, log = [], []
    pool = list(R.positive_roots)
    while pool:
        top = sorted(_maximal(R, pool))
        beta = top[0]  # lex-least
        log.append(top)
        betas.append(beta)
        pool = [a for a in pool if R.inner(a, beta) == 0]
    for b in betas:
        assert b in R.nonmultipliable, f"cascade root {root_label(b)} is multipliable"
    return betas, log


def kostant_cascade(R: RestrictedRootDatum) -> list:
    """Strongly orthogonal roots: highest root, then maximal orthogonal ones."""
    return cascade_with_candidates(R)[0]


def layer_sets(R: RestrictedRootDatum, betas) -> list:
    pos = set(R.positive_roots)
    used, out = set(), []
    for b in betas:
        lay = {a for a in R.positive_roots if a not in used
               and tuple(x - y for x, y in zip(b, a)) in pos}
        used |= lay
        out.append(frozenset(lay))
    check_partition(R, betas, out)
    return out


def check_partition(R, betas, layers) -> None:
    seen = {}
    for r, (b, lay) in enumerate(zip(betas, layers)):
        for a in (b, *lay):
            if a in seen:
                raise AssertionError(f"{root_label(a)} in layers {seen[a]} and {r}")
            seen[a] = r
    missing = [a for a in R.positive_roots if a not in seen]
    if missing:
        raise AssertionError(f"roots outside every layer: {[root_label(a) for a in missing]}")


def sigma_involution(R: RestrictedRootDatum, betas, r: int, layers=None) -> dict:
    """``alpha -> -s_beta(alpha)`` on the r-th layer (r counted from 1)."""
    layers = layer_sets(R, betas) if layers is None else layers
    beta, lay = betas[r - 1], layers[r - 1]
    out = {}
    for a in lay:
        s = tuple(-x for x in R.reflect(beta, a))
        if s not in lay:
            raise AssertionError(f"sigma_{r}({root_label(a)}) = {root_label(s)} leaves the layer")
        if tuple(x + y for x, y in zip(a, s)) != beta:
            raise AssertionError(f"{root_label(a)} + sigma_{r} != beta_{r}")
        out[a] = s
    return out


@dataclass
class CascadeDecomposition:
    """Layers ``l_r = z_r + v_r`` of a nilpotent algebra.

    Also used for the layers attached to a general parabolic; there
    ``ambient`` is the parabolic nilradical and ``ldp`` holds ``l''``.
    """

    algebra: NilpotentAlgebra
    betas: list
    layers: list
    l: list
    z: list
    v: list
    ambient: Subspace
    datum: RestrictedRootDatum | None = None
    candidates: list = field(default_factory=list)
    ldp: list | None = None
    issues: list = field(default_factory=list)

    def __post_init__(self):
        if self.ldp is None:
            self.ldp = [Subspace.zero(self.algebra.dim) for _ in self.l]

    @property
    def m(self) -> int:
        return len(self.l)

    @property
    def d(self) -> list:
        out = []
        for l, z in zip(self.l, self.z):
            k = l.dim - z.dim
            out.append(k // 2 if k % 2 == 0 else None)
        return out

    @property
    def c(self) -> int | None:
        d = self.d
        if None in d:
            return None
        out = 2 ** sum(d)
        for x in d:
            out *= factorial(x)
        return out

    def n_r(self, r: int) -> Subspace:
        acc = Subspace.zero(self.algebra.dim)
        for l in self.l[:r]:
            acc = acc + l
        return acc

    @property
    def s(self) -> Subspace:
        acc = Subspace.zero(self.algebra.dim)
        for z in self.z:
            acc = acc + z
        return acc

    @property
    def v_total(self) -> Subspace:
        acc = Subspace.zero(self.algebra.dim)
        for v in self.v:
            acc = acc + v
        return acc

    def dims(self) -> dict:
        return {"n": self.ambient.dim, "s": sum(z.dim for z in self.z),
                "l": [x.dim for x in self.l], "z": [x.dim for x in self.z],
                "v": [x.dim for x in self.v]}

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "betas": [root_label(b) for b in self.betas],
            "layers": [sorted(root_label(a) for a in lay) for lay in self.layers],
            "dims": self.dims(),
            "d": self.d,
            "c": self.c,
            "m": self.m,
            "rank": None if self.datum is None else self.datum.rank,
            "candidates": [[root_label(b) for b in top] for top in self.candidates],
            "issues": list(self.issues),
        }


def complement(S: Subspace, Z: Subspace) -> Subspace:
    """Coordinate complement of ``Z`` in ``S``: the non-pivot coordinates of Z in S.

    Requires ``S`` coordinate aligned, which holds for every graded layer.
    """
    if S.coords is None:
        raise ValueError("complement needs a coordinate-aligned ambient subspace")
    return Subspace.from_indices(S.n, [i for i in sorted(S.coords) if i not in set(Z.pivots)])


def layer_decomposition(N: NilpotentAlgebra, R: RestrictedRootDatum | None = None) -> CascadeDecomposition:
    R = N.datum if R is None else R
    betas, cands = cascade_with_candidates(R)
    layers = layer_sets(R, betas)
    ls, zs, vs, issues = [], [], [], []
    for r, (b, lay) in enumerate(zip(betas, layers), 1):
        l = N.span({b, *lay})
        z = center(N, l)
        ls.append(l)
        zs.append(z)
        vs.append(complement(l, z))
        if (l.dim - z.dim) % 2:
            issues.append(f"layer {r}: dim(l/z) = {l.dim - z.dim} is odd")
    return CascadeDecomposition(N, betas, layers, ls, zs, vs, N.whole(), R, cands, issues=issues)


# ---------------------------------------------------------------------------
# setup verification

@dataclass
class SetupReport:
    mode: str
    cond_a: bool
    cond_b: bool
    cond_c: bool
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cond_a and self.cond_b and self.cond_c

    def to_json(self) -> dict:
        return {"mode": self.mode, "a": self.cond_a, "b": self.cond_b, "c": self.cond_c,
                "witnesses": self.witnesses}


def _witness(D, kind: str, r: int, s: int, S1, S2, target) -> dict | None:
    w = bracket_witness(D.algebra, S1, S2, target)
    if w is None:
        return None
    A = D.algebra
    return {"condition": kind, "r": r, "s": s, "triple": list(w),
            "labels": [A.basis[i].label for i in w]}


def check_setup(D: CascadeDecomposition, mode: str = "strong", pfaffians: bool = True) -> SetupReport:
    """Verify conditions (a), (b), (c) by exact bracket computation.

    ``strong``: for r > s, ``[l_r, z_s] = 0`` and ``[l_r, l_s]`` lies in ``v``.
    ``weak``: for r >= s, ``[l_r, z_s] = 0``; for r > s, ``[l_r, l_s]`` lies
    in ``l''_s + v_s``.
    """
    if mode not in ("strong", "weak"):
        raise ValueError(f"unknown mode {mode!r}")
    A = D.algebra
    wit = []
    zero = Subspace.zero(A.dim)

    a_ok = True
    if pfaffians:
        from .pfaff import layer_pfaffian
        for r in range(D.m):
            if (D.l[r].dim - D.z[r].dim) % 2 or layer_pfaffian(D, r + 1).is_zero():
                a_ok = False
                wit.append({"condition": "a", "r": r + 1, "reason": "Pfaffian vanishes identically"})

    b_ok = True
    prev = zero
    for r in range(D.m):
        cur = prev + D.l[r]
        if not is_subalgebra(A, D.l[r]):
            b_ok = False
            wit.append(_witness(D, "b:subalgebra", r + 1, r + 1, D.l[r], D.l[r], D.l[r]))
        if not is_ideal(A, cur, D.ambient):
            b_ok = False
            wit.append(_witness(D, "b:ideal", r + 1, 0, D.ambient, cur, cur))
        if not prev.intersect(D.l[r]).is_zero() or cur.dim != prev.dim + D.l[r].dim:
            b_ok = False
            wit.append({"condition": "b:direct", "r": r + 1})
        prev = cur

    c_ok = True
    v = D.v_total
    for r in range(D.m):
        for s in range(D.m):
            if r < s or (r == s and mode == "strong"):
                continue
            if not bracket_span(A, D.l[r], D.z[s]).is_zero():
                c_ok = False
                wit.append(_witness(D, "c:center", r + 1, s + 1, D.l[r], D.z[s], zero))
            if r == s:
                continue
            target = v if mode == "strong" else D.ldp[s] + D.v[s]
            if not target.contains_space(bracket_span(A, D.l[r], D.l[s])):
                c_ok = False
                wit.append(_witness(D, "c:bracket", r + 1, s + 1, D.l[r], D.l[s], target))
    return SetupReport(mode, a_ok, b_ok, c_ok, [w for w in wit if w is not None])


def check_layer_filtration(D: CascadeDecomposition) -> list:
    """Failures of ``[l_r, l_s] in l_min(r,s)``; empty when it holds."""
    bad = []
    for r in range(D.m):
        for s in range(r, D.m):
            w = _witness(D, "filtration", r + 1, s + 1, D.l[r], D.l[s], D.l[r])
            if w:
                bad.append(w)
    return bad


def check_layer_roots(D: CascadeDecomposition) -> list:
    """Root-level form of the layer description: for each r, ``{beta_r} + layer_r``
    is the set of positive roots orthogonal to earlier betas and positive on beta_r."""
    R = D.datum
    bad = []
    for r, (b, lay) in enumerate(zip(D.betas, D.layers)):
        want = {a for a in R.positive_roots
                if all(R.inner(a, D.betas[i]) == 0 for i in range(r)) and R.inner(a, b) > 0}
        if want != {b, *lay}:
            bad.append(r + 1)
    return bad


# ---------------------------------------------------------------------------
# Heisenberg pairing

@dataclass
class PairingResult:
    ok: bool
    summands: list = field(default_factory=list)  # (central index, u indices, u' indices)
    abelian: list = field(default_factory=list)
    failed: str | None = None
    witness: object = None


def heisenberg_pairing_check(A: NilpotentAlgebra, S: Subspace | None = None) -> PairingResult:
    """Split ``S`` (default all of ``A``) as Heisenberg algebras plus an abelian part.

    ``u_a`` and ``u'_a`` are chosen from the root grading: for each central
    root ``k`` the non-central roots ``p`` with ``k - p`` also present are
    split by lex order, a self-paired root space by slot halves.  The
    hypotheses are then checked exactly; a failure names the first one that
    breaks as ``"i"``, ``"ii"`` or ``"iii"``.
    """
    S = A.whole() if S is None else S
    Z = center(A, S)
    if S.coords is None or Z.coords is None:
        return PairingResult(False, failed="iii", witness="center not spanned by basis vectors")
    V = [i for i in sorted(S.coords) if i not in Z.coords]
    central = sorted(Z.coords)
    by_root = {}
    for i in V:
        by_root.setdefault(A.root(i), []).append(i)
    zroots = {}
    for k in central:
        zroots.setdefault(A.root(k), []).append(k)

    groups = []
    assigned = set()
    for kr in sorted(zroots, reverse=True):
        u, up = [], []
        for p in sorted(by_root, reverse=True):
            q = tuple(x - y for x, y in zip(kr, p))
            if q not in by_root or p in assigned:
                continue
            if p > q:
                u += by_root[p]
                up += by_root[q]
                assigned |= {p, q}
            elif p == q:
                idx = by_root[p]
                h = len(idx) // 2
                u += idx[:h]
                up += idx[h:]
                assigned.add(p)
        if u or up:
            groups.append((kr, u, up))
    leftover = [i for i in V if A.root(i) not in assigned]
    if leftover:
        return PairingResult(False, failed="iii", witness=("unpaired", leftover))

    def brackets(I, J):
        for i in I:
            for j in J:
                out = A.bracket_basis(i, j)
                if out:
                    return (i, j, next(iter(out)))
        return None

    for kr, u, up in groups:
        w = brackets(u, u) or brackets(up, up)
        if w:
            return PairingResult(False, failed="i", witness=w)
    for a, (_, u, _) in enumerate(groups):
        for b, (_, _, up) in enumerate(groups):
            if a != b:
                w = brackets(u, up)
                if w:
                    return PairingResult(False, failed="ii", witness=w)
    summands = []
    used = set()
    for kr, u, up in groups:
        line = zroots[kr]
        if len(line) != 1 or len(u) != len(up):
            return PairingResult(False, failed="iii", witness=("central line", root_label(kr)))
        k = line[0]
        M = [[A.bracket_basis(i, j).get(k, ZERO) for j in up] for i in u]
        if nullspace(M, len(up)):
            return PairingResult(False, failed="iii", witness=("degenerate", root_label(kr)))
        summands.append((k, u, up))
        used.add(k)
    return PairingResult(True, summands, [k for k in central if k not in used])


def verify_cascade(R: RestrictedRootDatum, betas) -> list:
    """Exhaustive check of the defining property; returns failure messages.

    Each beta_r must be orthogonal to the earlier ones, no orthogonal
    positive root may lie strictly above it, the betas must be strongly
    orthogonal and nothing orthogonal to all of them may remain.
    """
    bad = []
    pos = R.positive_roots
    for r, b in enumerate(betas):
        earlier = betas[:r]
        if any(R.inner(b, x) != 0 for x in earlier):
            bad.append(f"beta_{r + 1} not orthogonal to earlier betas")
        pool = [a for a in pos if all(R.inner(a, x) == 0 for x in earlier)]
        if b not in pool:
            bad.append(f"beta_{r + 1} outside the orthogonal subsystem")
        for a in pool:
            if a != b and R.leq(b, a):
                bad.append(f"beta_{r + 1} = {root_label(b)} below {root_label(a)}")
        for x in earlier:
            for sgn in (1, -1):
                if tuple(p + sgn * q for p, q in zip(b, x)) in R.roots:
                    bad.append(f"beta_{r + 1} and {root_label(x)} not strongly orthogonal")
    rest = [a for a in pos if all(R.inner(a, x) == 0 for x in betas)]
    if rest:
        bad.append(f"roots orthogonal to every beta remain: {[root_label(a) for a in rest]}")
    return bad
