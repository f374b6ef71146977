"""Nilradicals of general parabolics ``q_Phi`` and their Phi-layers.

``phi`` is a bitmask over the simple roots: bit ``i`` selects ``psi_{i+1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cascade import CascadeDecomposition, SetupReport, _witness, check_setup, sigma_involution
from .linalg import Subspace, nullspace
from .liealg import NilpotentAlgebra, bracket_span, center, is_ideal, is_subalgebra
from .rootkit import RestrictedRootDatum, root_label


@dataclass
class ParabolicDatum:
    algebra: NilpotentAlgebra
    datum: RestrictedRootDatum
    base: CascadeDecomposition
    phi_mask: int
    phi: list
    phi_red: list
    phi_nil: list
    a_phi: list
    n_phi: Subspace
    J: list  # per cascade index: None when g_beta is not in n_Phi
    Jp: list
    Jpp: list
    psi_chain: list

    def restriction(self, alpha) -> tuple:
        """``alpha|a_Phi`` as the simple coefficients outside Phi."""
        c = self.datum.coefficients(alpha)
        return tuple(x for i, x in enumerate(c) if not self.phi_mask >> i & 1)

    def in_nil(self, alpha) -> bool:
        return any(self.restriction(alpha))

    def to_json(self) -> dict:
        return {"phi_mask": self.phi_mask,
                "phi": [root_label(a) for a in self.phi],
                "phi_red": [root_label(a) for a in self.phi_red],
                "phi_nil": [root_label(a) for a in self.phi_nil],
                "dim_n_phi": self.n_phi.dim,
                "J_dprime": [None if x is None else sorted(root_label(a) for a in x) for x in self.Jpp]}


def parse_phi(text: str | int, nsimple: int) -> int:
    mask = text if isinstance(text, int) else int(str(text), 0)
    if mask < 0 or mask >> nsimple:
        raise ValueError(f"phi mask {mask:#b} outside {nsimple} simple roots")
    return mask


def psi_chain(R: RestrictedRootDatum, betas) -> list:
    """``Psi_1 = Psi`` and ``Psi_{s+1}`` = simple roots orthogonal to beta_1..beta_s."""
    out = [list(R.simple_roots)]
    for s in range(1, len(betas)):
        out.append([p for p in R.simple_roots if all(R.inner(p, b) == 0 for b in betas[:s])])
    return out


def check_psi_chain(R: RestrictedRootDatum, betas) -> list:
    """Indices r where Psi_r is not the simple system of the roots orthogonal
    to the earlier betas (or where the chain fails to decrease)."""
    chain = psi_chain(R, betas)
    bad = []
    for r, psi in enumerate(chain):
        if r and not set(psi) <= set(chain[r - 1]):
            bad.append(r + 1)
            continue
        sub = [a for a in R.positive_roots if all(R.inner(a, b) == 0 for b in betas[:r])]
        subset = set(sub)
        simple = {a for a in sub if not any(tuple(x - y for x, y in zip(a, b)) in subset for b in sub)}
        if simple != set(psi):
            bad.append(r + 1)
    return bad


def build_parabolic(N: NilpotentAlgebra, R: RestrictedRootDatum, D: CascadeDecomposition,
                    phi: int) -> ParabolicDatum:
    psi = R.simple_roots
    mask = parse_phi(phi, len(psi))
    inside = [i for i in range(len(psi)) if mask >> i & 1]
    red, nil = [], []
    for a in R.positive_roots:
        c = R.coefficients(a)
        if all(c[i] == 0 for i in range(len(psi)) if i not in inside):
            red.append(a)
        else:
            nil.append(a)
    phi_red = red + [tuple(-x for x in a) for a in red]
    basis = R.root_span_basis()
    eqs = [[sum(x * y for x, y in zip(psi[i], v)) for v in basis] for i in inside]
    a_phi = [tuple(sum(c * v[k] for c, v in zip(sol, basis)) for k in range(len(basis[0])))
             for sol in nullspace(eqs, len(basis))]
    n_phi = N.span(nil)
    nilset = set(nil)
    J, Jp, Jpp = [], [], []
    for r, (b, lay) in enumerate(zip(D.betas, D.layers), 1):
        if b not in nilset:
            J.append(None)
            Jp.append(None)
            Jpp.append(None)
            continue
        sig = sigma_involution(R, D.betas, r, D.layers)
        j = frozenset(a for a in lay if a in nilset)
        jp = frozenset(a for a in j if sig[a] in j)
        J.append(j)
        Jp.append(jp)
        Jpp.append(j - jp)
    return ParabolicDatum(N, R, D, mask, [psi[i] for i in inside], phi_red, nil, a_phi, n_phi,
                          J, Jp, Jpp, psi_chain(R, D.betas))


def _l_cap(P: ParabolicDatum, r: int) -> Subspace:
    return P.base.l[r].intersect(P.n_phi)


def _centre_part(P: ParabolicDatum, r: int) -> Subspace:
    """``g_beta_r + sum_{J''_r} g_alpha``."""
    return P.algebra.span({P.base.betas[r], *P.Jpp[r]})


def check_intersection_lemmas(P: ParabolicDatum) -> dict:
    N, D = P.algebra, P.base
    out = {"a": True, "b": True, "c": True, "d": True, "witnesses": []}
    for r in range(D.m):
        cap = _l_cap(P, r)
        if P.J[r] is None:
            if not cap.is_zero():
                out["a"] = False
                out["witnesses"].append({"lemma": "a", "r": r + 1})
            continue
        target = P.restriction(D.betas[r])
        for a in P.Jpp[r]:
            if P.restriction(a) != target:
                out["b"] = False
                out["witnesses"].append({"lemma": "b", "r": r + 1, "root": root_label(a)})
        zc = _centre_part(P, r)
        dp = N.span(P.Jpp[r])
        prime = N.span({D.betas[r], *P.Jp[r]})
        if (center(N, cap) != zc or not is_ideal(N, dp, cap) or not is_ideal(N, prime, cap)
                or (dp + prime) != cap or dp.dim + prime.dim != cap.dim):
            out["c"] = False
            out["witnesses"].append({"lemma": "c", "r": r + 1})
    for r in range(D.m):
        for s in range(r):
            if P.J[s] is None:
                continue
            zero = Subspace.zero(N.dim)
            w = _witness(D, "d", r + 1, s + 1, _l_cap(P, r), _centre_part(P, s), zero)
            if w:
                out["d"] = False
                out["witnesses"].append(w)
    out["ok"] = out["a"] and out["b"] and out["c"] and out["d"]
    return out


@dataclass
class PhiLayer:
    index: int
    I: list
    q: int
    l: Subspace
    z: Subspace
    v: Subspace
    l_prime: Subspace
    l_dprime: Subspace
    l_dagger: Subspace | None = None
    roots: frozenset = field(default_factory=frozenset)

    @property
    def d(self) -> int | None:
        return self.v.dim // 2 if self.v.dim % 2 == 0 else None


def restriction_classes(P: ParabolicDatum) -> list:
    """Greedy ``I_j``: cascade indices grouped by equal nonzero restriction."""
    D = P.base
    res = [P.restriction(b) for b in D.betas]
    used, out = set(), []
    for q in range(D.m):
        if q in used or not any(res[q]):
            continue
        cls = [i for i in range(D.m) if res[i] == res[q]]
        used |= set(cls)
        out.append(cls)
    return out


def phi_layers(P: ParabolicDatum, D: CascadeDecomposition | None = None) -> list:
    D = P.base if D is None else D
    N = P.algebra
    out = []
    for j, I in enumerate(restriction_classes(P), 1):
        roots, zr, vr, lp, lpp = set(), set(), set(), set(), set()
        for i in I:
            b = D.betas[i]
            roots |= {b, *P.J[i]}
            zr |= {b, *P.Jpp[i]}
            vr |= set(P.Jp[i])
            lp |= {b, *P.Jp[i]}
            lpp |= set(P.Jpp[i])
        out.append(PhiLayer(j, [i + 1 for i in I], I[0] + 1, N.span(roots), N.span(zr), N.span(vr),
                            N.span(lp), N.span(lpp), roots=frozenset(roots)))
    for k, lay in enumerate(out):
        acc = Subspace.zero(N.dim)
        for x in out[k:]:
            acc = acc + x.l
        lay.l_dagger = acc
    return out


def phi_decomposition(P: ParabolicDatum, layers: list) -> CascadeDecomposition:
    """The Phi-layers packaged for :func:`check_setup` and the Pfaffian code."""
    D = P.base
    return CascadeDecomposition(
        P.algebra, [D.betas[x.q - 1] for x in layers], [x.roots for x in layers],
        [x.l for x in layers], [x.z for x in layers], [x.v for x in layers], P.n_phi,
        P.datum, ldp=[x.l_dprime for x in layers])


def check_phi_setup(P: ParabolicDatum, layers: list) -> SetupReport:
    """Weak setup conditions for the Phi-layers plus the auxiliary lemmas.

    Auxiliary witnesses are tagged ``aux:*`` and count against condition (c).
    """
    N = P.algebra
    PD = phi_decomposition(P, layers)
    rep = check_setup(PD, "weak")
    aux = []
    zero = Subspace.zero(N.dim)
    for j, lj in enumerate(layers):
        if center(N, lj.l) != lj.z:
            aux.append({"condition": "aux:center", "j": j + 1})
        if not (is_subalgebra(N, lj.l) and is_subalgebra(N, lj.l_dagger) and is_ideal(N, lj.l, lj.l_dagger)):
            aux.append({"condition": "aux:ideal", "j": j + 1})
        for part, name in ((lj.z, "z"), (lj.l_dprime, "l''")):
            if not bracket_span(N, lj.l_dagger, part).is_zero():
                aux.append({"condition": f"aux:central {name}", "j": j + 1})
        if (lj.l_prime + lj.l_dprime) != lj.l or lj.l_prime.dim + lj.l_dprime.dim != lj.l.dim:
            aux.append({"condition": "aux:split", "j": j + 1})
        if not lj.z.contains_space(lj.l_dprime) or not lj.l_prime.contains_space(lj.v):
            aux.append({"condition": "aux:split", "j": j + 1})
        betas_j = N.span({P.base.betas[i - 1] for i in lj.I})
        for k in range(j, len(layers)):
            br = bracket_span(N, layers[k].l, lj.l)
            if not lj.l.contains_space(br):
                aux.append({"condition": "aux:layer-bracket", "k": k + 1, "j": j + 1})
            if k > j and not br.intersect(betas_j).is_zero():
                aux.append({"condition": "aux:beta-meet", "k": k + 1, "j": j + 1})
    if aux:
        rep.cond_c = False
        rep.witnesses += aux
    return rep


def phi_plancherel_density(P: ParabolicDatum, layers: list):
    """``prod_j Pf(b_lambda_j)`` over the Phi-layers and the constant c."""
    from .pfaff import plancherel_density

    PD = phi_decomposition(P, layers)
    return plancherel_density(PD), PD.c


def invariance_class(P: ParabolicDatum, layers: list) -> str:
    """Restriction-class surrogate for invariance of the ``z_{Phi,j}``.

    ``invariant``: each ``z_{Phi,j}`` is the full sum of root spaces with its
    ``a_Phi``-restriction. ``restriction-class-stable``: a proper sub-sum of
    such root spaces. ``undetermined``: anything else.
    """
    verdicts = []
    N = P.algebra
    for lj in layers:
        zroots = {N.root(i) for i in lj.z.coords or ()}
        if lj.z.coords is None or not zroots:
            verdicts.append("undetermined")
            continue
        res = {P.restriction(a) for a in zroots}
        if len(res) != 1:
            verdicts.append("undetermined")
            continue
        (target,) = res
        cls = {a for a in P.phi_nil if P.restriction(a) == target}
        if zroots == cls:
            verdicts.append("invariant")
        elif zroots < cls:
            verdicts.append("restriction-class-stable")
        else:
            verdicts.append("undetermined")
    for v in ("undetermined", "restriction-class-stable"):
        if v in verdicts:
            return v
    return "invariant"


def parabolic_report(N: NilpotentAlgebra, D: CascadeDecomposition, phi: int) -> dict:
    """Everything the CLI prints for one Phi."""
    from .pfaff import n_variables

    P = build_parabolic(N, D.datum, D, phi)
    layers = phi_layers(P, D)
    inter = check_intersection_lemmas(P)
    setup = check_phi_setup(P, layers)
    dens, c = phi_plancherel_density(P, layers)
    out = P.to_json()
    out.update({
        "layers": [{"I_j": x.I, "q_j": x.q, "dims": {"l": x.l.dim, "z": x.z.dim, "v": x.v.dim},
                    "d_j": x.d} for x in layers],
        "density": dens.format(), "c": c,
        "checks": {"intersection": {k: v for k, v in inter.items() if k != "witnesses"},
                   "setup": setup.to_json(), "invariance": invariance_class(P, layers),
                   "psi_chain": not check_psi_chain(D.datum, D.betas)},
        "witnesses": inter["witnesses"],
    })
    out["ok"] = inter["ok"] and setup.ok
    return out
