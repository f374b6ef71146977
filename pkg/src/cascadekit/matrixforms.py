"""Real matrix models of classical real forms.

Each model realizes the algebra inside real N x N matrices (complex and
quaternionic entries are realified) together with a diagonal split torus, so
restricted root spaces are measured as simultaneous eigenspaces of ad(a):
ad(diag(t)) acts on the matrix unit E_ij by t_i - t_j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .linalg import ZERO, nullspace
from .rootkit import RealFormSpec, _matrix_label, is_positive

Sparse = dict  # {(i, j): Fraction}

_R_I = [[0, -1], [1, 0]]
_H_I = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
_H_J = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]


def mat_mul(a: Sparse, b: Sparse) -> Sparse:
    rows = {}
    for (k, j), v in b.items():
        rows.setdefault(k, []).append((j, v))
    out = {}
    for (i, k), u in a.items():
        for j, v in rows.get(k, ()):
            out[(i, j)] = out.get((i, j), ZERO) + u * v
    return {key: v for key, v in out.items() if v != 0}


def mat_add(a: Sparse, b: Sparse, s=1) -> Sparse:
    out = dict(a)
    for key, v in b.items():
        out[key] = out.get(key, ZERO) + s * v
    return {key: v for key, v in out.items() if v != 0}


def commutator(a: Sparse, b: Sparse) -> Sparse:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def transpose(a: Sparse) -> Sparse:
    return {(j, i): v for (i, j), v in a.items()}


def _block_diag(block, copies) -> Sparse:
    k = len(block)
    out = {}
    for c in range(copies):
        for i in range(k):
            for j in range(k):
                if block[i][j]:
                    out[(c * k + i, c * k + j)] = Fraction(block[i][j])
    return out


def _kron_identity(small: Sparse, k: int) -> Sparse:
    return {(i * k + a, j * k + a): v for (i, j), v in small.items() for a in range(k)}


def _primitive(v):
    den = math.lcm(*(x.denominator for x in v if x != 0))
    w = [x * den for x in v]
    g = math.gcd(*(int(x) for x in w if x != 0))
    return tuple(Fraction(int(x) // g) for x in w)


@dataclass
class MatrixModel:
    spec: RealFormSpec
    size: int
    field_dim: int
    functionals: list  # per defining-rep index: e-coordinate vector
    structures: list = field(default_factory=list)
    form: Sparse | None = None
    trace_maps: list = field(default_factory=list)
    root_spaces: dict = field(default_factory=dict)
    # per root: positions, free positions, scales (for coordinate extraction)
    _coord_data: dict = field(default_factory=dict)

    def weight(self, i: int, j: int):
        k = self.field_dim
        fi, fj = self.functionals[i // k], self.functionals[j // k]
        return tuple(a - b for a, b in zip(fi, fj))

    def _constraint_images(self, pos):
        i, j = pos
        e = {pos: Fraction(1)}
        out = {}
        for t, r in enumerate(self.structures):
            for key, v in mat_add(mat_mul(e, r), mat_mul(r, e), -1).items():
                out[("s", t) + key] = v
        if self.form is not None:
            s = self.form
            for key, v in mat_add(mat_mul(transpose(e), s), mat_mul(s, e)).items():
                out[("f",) + key] = v
        return out

    def _solve_space(self, positions, with_trace=False):
        images = [self._constraint_images(p) for p in positions]
        keys = sorted({k for im in images for k in im}, key=repr)
        rows = [[im.get(k, ZERO) for im in images] for k in keys]
        if with_trace:
            for tm in self.trace_maps:
                row = [ZERO] * len(positions)
                for c, p in enumerate(positions):
                    row[c] = tm.get(p, ZERO)
                rows.append(row)
        return nullspace(rows, len(positions), return_free=True)

    def build(self):
        groups = {}
        for i in range(self.size):
            for j in range(self.size):
                w = self.weight(i, j)
                if any(w):
                    groups.setdefault(w, []).append((i, j))
        for w, positions in groups.items():
            basis, free = self._solve_space(positions)
            if not basis:
                continue
            vecs = [_primitive(b) for b in basis]
            scales = [v[c] for v, c in zip(vecs, free)]
            self.root_spaces[w] = [
                {positions[c]: x for c, x in enumerate(v) if x != 0} for v in vecs]
            self._coord_data[w] = (positions, free, scales)
        return self

    def coordinates(self, root, m: Sparse) -> list:
        """Coordinates of ``m`` (assumed in the root space) in its basis."""
        positions, free, scales = self._coord_data[root]
        return [m.get(positions[c], ZERO) / s for c, s in zip(free, scales)]

    def dim_g(self) -> int:
        positions = [(i, j) for i in range(self.size) for j in range(self.size)]
        return len(self._solve_space(positions, with_trace=True)[0])

    def dim_g0(self) -> int:
        positions = [(i, j) for i in range(self.size) for j in range(self.size)
                     if not any(self.weight(i, j))]
        return len(self._solve_space(positions, with_trace=True)[0])

    def torus_element(self, xi) -> Sparse:
        """Realified diagonal matrix of xi in the split torus."""
        k = self.field_dim
        out = {}
        for idx, f in enumerate(self.functionals):
            t = sum((a * b for a, b in zip(f, xi)), ZERO)
            if t:
                for a in range(k):
                    out[(idx * k + a, idx * k + a)] = t
        return out


def _unit(n, i, c=1):
    v = [ZERO] * n
    if i is not None:
        v[i] = Fraction(c)
    return tuple(v)


def _split_form(p, q):
    """Symmetric form pairing index i with n-1-i for i < p, identity in the middle."""
    n = p + q
    s = {}
    for i in range(p):
        s[(i, n - 1 - i)] = Fraction(1)
        s[(n - 1 - i, i)] = Fraction(1)
    for i in range(p, n - p):
        s[(i, i)] = Fraction(1)
    return s


def _split_functionals(p, q):
    n = p + q
    f = [_unit(p, None)] * n
    for i in range(p):
        f[i] = _unit(p, i, 1)
        f[n - 1 - i] = _unit(p, i, -1)
    return f


@lru_cache(maxsize=None)
def matrix_model(spec: RealFormSpec) -> MatrixModel:
    fam, params = spec.family, spec.parameters
    if fam == "sl":
        n = params[0]
        m = MatrixModel(spec, n, 1, [_unit(n, i) for i in range(n)])
        m.trace_maps = [{(i, i): Fraction(1) for i in range(n)}]
    elif fam == "slH":
        n = params[0]
        m = MatrixModel(spec, 4 * n, 4, [_unit(n, i) for i in range(n)])
        m.structures = [_block_diag(_H_I, n), _block_diag(_H_J, n)]
        m.trace_maps = [{(i, i): Fraction(1) for i in range(4 * n)}]
    elif fam == "sp":
        n = params[0]
        f = [_unit(n, i) for i in range(n)] + [_unit(n, n - 1 - i, -1) for i in range(n)]
        m = MatrixModel(spec, 2 * n, 1, f)
        omega = {}
        for i in range(n):
            omega[(i, 2 * n - 1 - i)] = Fraction(1)
            omega[(2 * n - 1 - i, i)] = Fraction(-1)
        m.form = omega
    elif fam == "so":
        p, q = params
        m = MatrixModel(spec, p + q, 1, _split_functionals(p, q))
        m.form = _split_form(p, q)
    elif fam == "su":
        p, q = params
        n = p + q
        m = MatrixModel(spec, 2 * n, 2, _split_functionals(p, q))
        m.structures = [_block_diag(_R_I, n)]
        m.form = _kron_identity(_split_form(p, q), 2)
        j = _block_diag(_R_I, n)
        # complex trace: real part and imaginary part
        m.trace_maps = [{(i, i): Fraction(1) for i in range(2 * n)},
                        {(b, a): v for (a, b), v in j.items()}]
    else:
        raise ValueError(f"no matrix model for {spec.name}")
    return m.build()


def positive_root_spaces(model: MatrixModel) -> dict:
    return {w: v for w, v in model.root_spaces.items() if is_positive(w)}
