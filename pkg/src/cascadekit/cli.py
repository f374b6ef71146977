"""Command-line front end: ``python -m cascadekit <command> ...``.

Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import SCHEMA_VERSION
from .rootkit import CatalogError, parse_spec


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    phi: str | None = None
    all: bool = False
    box: int = 3
    tol: float = 1e-6
    output: str = "-"
    jobs: int = 1
    mode: str = "strong"
    suite: str | None = None
    max_rank: int = 4
    group: str = "heisenberg3"
    lam: float = 1.0
    fmt: str = "json"


def _encode(obj):
    from .pfaff import WeightVector

    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, WeightVector):
        return obj.to_json()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators, schema version."""
    body = dict(report)
    body["schema_version"] = SCHEMA_VERSION
    return json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False, default=_encode) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output in ("-", None):
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _algebra(cfg: RunConfig):
    if not cfg.algebra:
        raise UsageError("--algebra is required")
    try:
        spec = parse_spec(cfg.algebra)
    except CatalogError as exc:
        raise UsageError(str(exc)) from exc
    from .liealg import build_nilradical
    from .cascade import layer_decomposition

    N = build_nilradical(spec)
    return N, layer_decomposition(N)


def cmd_cascade(cfg: RunConfig) -> tuple:
    from .cascade import check_setup

    N, D = _algebra(cfg)
    setup = check_setup(D, cfg.mode)
    rep = D.to_json()
    rep["setup"] = setup.to_json()
    return rep, 0 if setup.ok else 1


def cmd_density(cfg: RunConfig) -> tuple:
    from .pfaff import density_report

    _, D = _algebra(cfg)
    return density_report(D), 0


def cmd_parabolic(cfg: RunConfig) -> tuple:
    from .parabolic import parabolic_report, parse_phi

    N, D = _algebra(cfg)
    k = len(D.datum.simple_roots)
    if cfg.all:
        masks = range(2 ** k)
    elif cfg.phi is not None:
        try:
            masks = [parse_phi(cfg.phi, k)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        raise UsageError("give --phi MASK or --all")
    reports = [parabolic_report(N, D, m) for m in masks]
    ok = all(r["ok"] for r in reports)
    if cfg.all:
        table = [{"phi_mask": r["phi_mask"], "dim_n_phi": r["dim_n_phi"], "ell": len(r["layers"]),
                  "density": r["density"], "c": r["c"], "invariance": r["checks"]["invariance"],
                  "ok": r["ok"]} for r in reports]
        return {"algebra": N.name, "simple_roots": k, "table": table, "reports": reports}, 0 if ok else 1
    return dict(reports[0], algebra=N.name), 0 if ok else 1


def cmd_lattice(cfg: RunConfig) -> tuple:
    from .lattice import LatticeSpec, multiplicities, rationality_check
    from .pfaff import plancherel_density

    _, D = _algebra(cfg)
    rat = rationality_check(D)
    if rat["ok"] is None:
        raise UsageError(f"lattice mode unavailable: {rat['reason']}")
    if not rat["ok"]:
        return {"algebra": D.algebra.name, "rationality": rat}, 1
    P = plancherel_density(D)
    try:
        rows = multiplicities(LatticeSpec(D), P, cfg.box)
    except ArithmeticError as exc:
        return {"algebra": D.algebra.name, "error": str(exc)}, 1
    return {"algebra": D.algebra.name, "box": cfg.box, "P": P.format(), "rationality": rat,
            "columns": [f"λ{k + 1}" for k in range(P.nvars)] + ["multiplicity"],
            "rows": [list(lam) + [m] for lam, m in rows]}, 0


def _run_pool(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def cmd_verify(cfg: RunConfig) -> tuple:
    from . import suites
    from .rootkit import restricted_datum

    suite = cfg.suite or "minimal"
    if suite == "minimal":
        names = suites.acceptance_catalog()
        results = _run_pool(suites.minimal_checks, names, cfg.jobs)
    elif suite == "parabolic":
        names = [n for n in suites.acceptance_catalog()
                 if len(restricted_datum(n).simple_roots) <= cfg.max_rank]
        results = _run_pool(suites.parabolic_checks, names, cfg.jobs)
    elif suite == "lattice":
        names = [n for n in suites.acceptance_catalog() if n.startswith("split-")]
        results = _run_pool(suites.lattice_checks, names, cfg.jobs)
    elif suite == "numeric":
        if cfg.group not in ("heisenberg3", "unipotent4"):
            raise UsageError(f"unknown group {cfg.group!r}")
        res = suites.numeric_suite(cfg.tol, cfg.lam)
        return dict(res, suite="numeric"), 0 if res["ok"] else 1
    else:
        raise UsageError(f"unknown suite {suite!r}")
    failed = [r for r in results if not r["ok"]]
    return {"suite": suite, "algebras": len(results), "failed": failed,
            "results": results, "ok": not failed}, 0 if not failed else 1


COMMANDS = {"cascade": cmd_cascade, "density": cmd_density, "parabolic": cmd_parabolic,
            "lattice": cmd_lattice, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cascadekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--algebra", help='catalog entry, e.g. "sl(4,R)" or "split-G2"')
        sp.add_argument("--json", dest="output", default="-", metavar="PATH",
                        help="write the JSON report here ('-' for stdout)")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--tol", type=float, default=1e-6)

    common(sc := sub.add_parser("cascade", help="cascade decomposition and setup report"))
    sc.add_argument("--mode", choices=("strong", "weak"), default="strong")
    common(sub.add_parser("density", help="Plancherel density polynomial"))
    common(sp := sub.add_parser("parabolic", help="Phi-layer report"))
    sp.add_argument("--phi", help="bitmask over simple roots, e.g. 0b010")
    sp.add_argument("--all", action="store_true", help="every subset of simple roots")
    common(sl := sub.add_parser("lattice", help="dual-lattice multiplicity table"))
    sl.add_argument("--box", type=int, default=3)
    common(sv := sub.add_parser("verify", help="run a verification suite"))
    sv.add_argument("suite_pos", nargs="?", metavar="SUITE",
                    help="minimal | parabolic | numeric | lattice")
    sv.add_argument("--suite", dest="suite_opt")
    sv.add_argument("--max-rank", type=int, default=4)
    sv.add_argument("--group", default="heisenberg3")
    sv.add_argument("--lambda", dest="lam", type=float, default=1.0)
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command, algebra=ns.algebra, output=ns.output, jobs=ns.jobs, tol=ns.tol)
    for key in ("mode", "phi", "all", "box", "max_rank", "group", "lam"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    if ns.command == "verify":
        cfg.suite = ns.suite_opt or ns.suite_pos
    if cfg.jobs < 1 or cfg.box < 0 or cfg.tol <= 0:
        raise UsageError("--jobs must be >= 1, --box >= 0 and --tol > 0")
    return cfg


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        report, code = COMMANDS[cfg.command](cfg)
    except SystemExit as exc:  # argparse
        return 2 if exc.code else 0
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(cfg, dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
