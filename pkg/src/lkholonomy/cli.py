"""Command-line interface: verification runs emitting JSON reports.

Exit codes: 0 = expectations verified, 1 = input error, 2 = mismatch.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import classify as C
from . import geometry as G
from . import serialization as S
from . import symspace as Y
from .config import DEFAULT_TOL
from .curvspace import berger_check, solve_curvature_space

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


def _add_common(sub):
    sub.add_argument("--order", type=int, default=None)
    sub.add_argument("--rmax", type=int, default=4)
    sub.add_argument("--tol", type=float, default=1e-9)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--expect", type=str, default=None)
    sub.add_argument("--out", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lkholonomy")
    sp = ap.add_subparsers(dest="command", required=True)

    h = sp.add_parser("holonomy", help="holonomy algebra of a metric")
    h.add_argument("--potential", required=True)
    _add_common(h)

    c = sp.add_parser("classify", help="match an algebra to a canonical family")
    c.add_argument("--algebra", required=True)
    _add_common(c)

    b = sp.add_parser("berger", help="curvature-space / Berger test")
    b.add_argument("--algebra", required=True)
    _add_common(b)

    p = sp.add_parser("ppwave", help="pp-wave condition checks")
    p.add_argument("--metric", required=True)
    _add_common(p)

    y = sp.add_parser("symspace", help="symmetric-space transvection checks")
    y.add_argument("--family", required=True, choices=list("abcdef"))
    y.add_argument("--n", type=int, default=0)
    y.add_argument("--m", type=int, default=0)
    _add_common(y)

    v = sp.add_parser("validate", help="metric invariants of a potential")
    v.add_argument("--potential", "--metric", dest="potential", required=True)
    _add_common(v)

    k = sp.add_parser("catalog", help="canonical family list with dimensions")
    k.add_argument("--n", type=int, required=True)
    _add_common(k)
    return ap


def _finish(args, command: str, payload: dict, ok: bool,
            tolerances: dict) -> int:
    report = S.make_report(command, payload, tolerances)
    if getattr(args, "expect", None):
        expected = S.load_json(args.expect)
        errs = S.compare_expected(expected, report["result"], tol=args.tol)
        report["expectation_errors"] = errs
        ok = not errs
    text = S.dump_json(report, getattr(args, "out", None))
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_holonomy(args) -> int:
    m = S.build_metric_from_config(S.load_json(args.potential), args.order)
    hol = G.infinitesimal_holonomy(m, r_max=args.rmax)
    d = C.match_algebra(hol.algebra)
    ric = G.ricci(m)
    ric_max = max(jet.max_abs() for jet in ric.ravel())
    payload = {
        "dims_by_order": hol.dims_by_order,
        "stabilized": hol.stabilized,
        "dim": hol.algebra.dim,
        "matched_family": d.family,
        "descriptor": d,
        "ricci_flat": bool(ric_max < args.tol),
        "bracket_residual": hol.bracket_residual,
        "realizable": C.is_holonomy_realizable(d) if d.family != "UNKNOWN" else "unknown",
    }
    ok = hol.stabilized and d.family != "UNKNOWN"
    return _finish(args, "holonomy", payload,
                   ok, {"tol": args.tol, "r_max": args.rmax})


def _cmd_classify(args) -> int:
    alg = S.decode_algebra(S.load_json(args.algebra))
    d = C.match_algebra(alg)
    payload = {
        "matched_family": d.family,
        "descriptor": d,
        "dim": alg.dim,
        "family_dim": C.family_dim(d) if d.family != "UNKNOWN" else None,
        "realizable": C.is_holonomy_realizable(d) if d.family != "UNKNOWN" else "unknown",
    }
    return _finish(args, "classify", payload, d.family != "UNKNOWN",
                   {"rank_rel": DEFAULT_TOL.rank_rel})


def _cmd_berger(args) -> int:
    alg = S.decode_algebra(S.load_json(args.algebra))
    res = berger_check(alg)
    payload = {
        "dim": alg.dim,
        "dim_R_space": res["dim_R_space"],
        "is_berger": res["is_berger"],
        "generated_dim": res["generated"].dim,
    }
    return _finish(args, "berger", payload, True,
                   {"rank_rel": DEFAULT_TOL.rank_rel})


def _cmd_ppwave(args) -> int:
    m = S.build_metric_from_config(S.load_json(args.metric), args.order)
    rep = G.ppwave_check(m, r_max=args.rmax)
    payload = rep
    return _finish(args, "ppwave", payload, rep.consistent,
                   {"tol": args.tol, "r_max": args.rmax})


def _cmd_symspace(args) -> int:
    pair = Y.canonical_pair(args.family, args.n, args.m)
    rep = Y.symspace_report(pair, args.family, args.m)
    ok = rep.jacobi and rep.g_equals_image
    return _finish(args, "symspace", rep, ok,
                   {"jacobi": DEFAULT_TOL.jacobi})


def _cmd_validate(args) -> int:
    m = S.build_metric_from_config(S.load_json(args.potential), args.order)
    F = G.witt_frame(m)
    payload = {
        "n": m.n,
        "hermitian_residual": m.hermitian_residual(),
        "kahler_residual": m.kahler_residual(),
        "walker": m.walker_report(),
        "is_walker": m.is_walker(),
        "inverse_residual": G.inverse_residual(m, G.walker_inverse(m)),
        "frame_gram_residual": G.frame_gram_residual(m, F),
    }
    ok = (payload["hermitian_residual"] < args.tol
          and payload["kahler_residual"] < args.tol
          and payload["inverse_residual"] < args.tol
          and payload["frame_gram_residual"] < args.tol)
    return _finish(args, "validate", payload, ok, {"tol": args.tol})


def _catalog_entries(n: int) -> list[dict]:
    entries: list[dict] = []
    if n == 0:
        for d in (C.G0Descriptor(), C.G1Descriptor(), C.G2Descriptor(),
                  C.G3Descriptor(gamma=1.0), C.G3Descriptor(gamma=0.0)):
            entries.append({"descriptor": d, "dim": C.family_dim(d)})
        return entries
    un = [1j * _eij(n, i, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            un.append(_eij(n, i, j) - _eij(n, j, i))
            un.append(1j * (_eij(n, i, j) + _eij(n, j, i)))
    gk = C.GKDescriptor(n, [(1.0, np.zeros((n, n), complex))]
                        + [(0.0, A) for A in un])
    entries.append({"descriptor": gk, "dim": C.family_dim(gk)})
    for m in range(n):
        um = [A[:m, :m].copy() for A in un if np.abs(A[:m, :m]).max(initial=0) > 0]
        jl = C.GKJLDescriptor(n, m, [(1.0, np.zeros((m, m), complex))]
                              + [(0.0, A) for A in um])
        entries.append({"descriptor": jl, "dim": C.family_dim(jl)})
    for m in range(n + 1):
        um = [A[:m, :m].copy() for A in un if np.abs(A[:m, :m]).max(initial=0) > 0]
        kl = C.GKLDescriptor(n, m, um)
        entries.append({"descriptor": kl, "dim": C.family_dim(kl)})
    for r in range(1, n + 1):
        for m in range(r, n + 1):
            n_psi = 2 * (m - r) + (n - m)
            if n_psi == 0:
                continue
            psi = [1j * np.eye(r, dtype=complex) for _ in range(n_psi)]
            ur = [A[:r, :r].copy() for A in un
                  if np.abs(A[:r, :r]).max(initial=0) > 0]
            try:
                d = C.GK0PsiDescriptor(n, m, r, ur, psi)
                entries.append({"descriptor": d, "dim": C.family_dim(d)})
            except ValueError:
                continue
    return entries


def _eij(n, i, j):
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1.0
    return m


def _cmd_catalog(args) -> int:
    entries = _catalog_entries(args.n)
    payload = {"n": args.n, "families": entries,
               "count": len(entries)}
    return _finish(args, "catalog", payload, True, {})


_DISPATCH = {
    "holonomy": _cmd_holonomy,
    "classify": _cmd_classify,
    "berger": _cmd_berger,
    "ppwave": _cmd_ppwave,
    "symspace": _cmd_symspace,
    "validate": _cmd_validate,
    "catalog": _cmd_catalog,
}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
