"""Verification bundles shared by the CLI and the acceptance tests."""
from __future__ import annotations

from .cascade import (cascade_with_candidates, check_layer_filtration, check_layer_roots,
                      check_setup, layer_decomposition, sigma_involution, verify_cascade)
from .lattice import LatticeSpec, box_for, multiplicities, rationality_check
from .liealg import build_nilradical, lower_central_series
from .pfaff import (b_lambda_matrix, det, layer_pfaffian, n_variables, pfaffian_matching_sum,
                    plancherel_density, scaling_holds, semiinvariance_check)
from .rootkit import catalog, restricted_datum

ACCEPT_SPLIT_RANK = 5
ACCEPT_MATRIX_SIZE = 8
PARABOLIC_MAX_RANK = 4


def acceptance_catalog(max_split_rank: int = ACCEPT_SPLIT_RANK,
                       max_matrix_size: int = ACCEPT_MATRIX_SIZE) -> list:
    return catalog(max_split_rank=max_split_rank, max_matrix_size=max_matrix_size)


def minimal_checks(name: str, oracle_size: int = 8, det_size: int = 16) -> dict:
    """All minimal-parabolic checks for one algebra; ``failures`` lists what broke."""
    R = restricted_datum(name)
    N = build_nilradical(name)
    fail = []
    fail += [f"jacobi {w}" for w in N.jacobi_violations(1)]
    fail += [f"grading {w}" for w in N.grading_violations()[:1]]
    if not lower_central_series(N)[-1].is_zero():
        fail.append("not nilpotent")
    if sum(R.mult[a] for a in R.positive_roots) != N.dim:
        fail.append("multiplicity sum != dim n")
    betas, _ = cascade_with_candidates(R)
    fail += verify_cascade(R, betas)
    D = layer_decomposition(N, R)
    fail += D.issues
    for r in range(1, D.m + 1):
        try:
            sigma_involution(R, D.betas, r, D.layers)
        except AssertionError as exc:
            fail.append(str(exc))
    fail += [f"filtration {w}" for w in check_layer_filtration(D)]
    fail += [f"layer roots r={r}" for r in check_layer_roots(D)]
    setup = check_setup(D, "strong")
    if not setup.ok:
        fail.append(f"setup {setup.to_json()}")
    if sum(z.dim + 2 * d for z, d in zip(D.z, D.d)) != N.dim:
        fail.append("sum rule")
    nv = n_variables(D)
    for r in range(1, D.m + 1):
        M = b_lambda_matrix(D, r)
        pf = layer_pfaffian(D, r)
        if len(M) <= oracle_size and pfaffian_matching_sum(M, nv) != pf:
            fail.append(f"matching oracle r={r}")
        if len(M) <= det_size and pf * pf != det(M, nv):
            fail.append(f"Pf^2 != det r={r}")
    P = plancherel_density(D)
    if P.is_zero() or not scaling_holds(P):
        fail.append("density scaling")
    semi = semiinvariance_check(D)
    if not semi["ok"]:
        fail.append("semi-invariance")
    return {"algebra": name, "dim": N.dim, "m": D.m, "rank": R.rank, "d": D.d, "c": D.c,
            "failures": fail, "ok": not fail}


def parabolic_checks(name: str) -> dict:
    from .parabolic import parabolic_report

    N = build_nilradical(name)
    D = layer_decomposition(N)
    nsimple = len(D.datum.simple_roots)
    reports = [parabolic_report(N, D, m) for m in range(2 ** nsimple)]
    bad = [r["phi_mask"] for r in reports if not r["ok"]]
    return {"algebra": name, "subsets": len(reports), "failed_masks": bad, "ok": not bad}


def lattice_checks(name: str, points: int = 1000) -> dict:
    N = build_nilradical(name)
    D = layer_decomposition(N)
    rat = rationality_check(D)
    if not rat["ok"]:
        return {"algebra": name, "rationality": rat, "ok": rat["ok"] is None}
    P = plancherel_density(D)
    box = box_for(points, P.nvars)
    try:
        rows = multiplicities(LatticeSpec(D), P, box)
    except ArithmeticError as exc:
        return {"algebra": name, "ok": False, "error": str(exc)}
    sym = all(abs(P.evaluate([-x for x in lam])) == m for lam, m in rows)
    return {"algebra": name, "box": box, "points": (2 * box + 1) ** P.nvars,
            "rows": len(rows), "symmetric": sym, "ok": sym}


def numeric_suite(tol: float = 1e-6, lam: float = 1.0) -> dict:
    from .planchnum import (Heisenberg, ModelRep, Unipotent4, associativity_defect, hermite_function,
                            unitarity_check, verify_inversion, verify_orthogonality,
                            verify_stepwise_norm)

    h0, h1 = hermite_function(0), hermite_function(1)
    orth = [verify_orthogonality(x, [h0, h1], tol=tol) for x in (lam, 2.0, 3.0)]
    inv = verify_inversion(tol=tol)
    step = [verify_stepwise_norm(x) for x in ((1.0, 1.0), (2.0, 1.0))]
    unit = unitarity_check(ModelRep(Heisenberg(1), lam), h1)
    assoc = max(associativity_defect(Heisenberg(1)), associativity_defect(Unipotent4()))
    ok = all(r["ok"] for r in orth) and inv["ok"] and all(r["ok"] for r in step) and unit["ok"] \
        and assoc < 1e-12
    inv = {k: v for k, v in inv.items() if k != "rows"}
    return {"orthogonality": orth, "inversion": inv, "stepwise": step, "unitarity": unit,
            "associativity_defect": assoc, "ok": ok}
