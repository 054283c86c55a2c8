"""Command-line front end.

Subcommands ``series``, ``torsion``, ``subgroups``, ``verify`` and
``pullback`` print a human-readable table by default and a deterministic
JSON report with ``--json``.  Exit codes: 0 success, 1 verification
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import qseries
from .power_operation import compare_formula_vs_pointwise, qprime_image_check, verify_psi_star_hom
from .rings import build_O_Sub, build_O_TN
from .subgroups import (
    classification_report,
    enumerate_subgroups,
    sigma,
    subgroups_by_closure,
    verify_universal_bijection,
)
from .torsion import CycloQUnit, b_N, char_xk, enumerate_torsion, pairing_table, torsion_checks, torsion_coordinates

DEFAULT_ORDER = 20
DEFAULT_MAX_N = 24
CLOSURE_ORACLE_MAX_N = 8

SERIES_KINDS: dict[str, Callable[[int], qseries.QSeries]] = {
    "a4": qseries.tate_a4,
    "a6": qseries.tate_a6,
    "disc": qseries.discriminant,
    "eta24": qseries.eta_product_24,
    "j": qseries.j_invariant,
}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def report(command: str, parameters: dict, payload, status: str = "ok") -> dict:
    return {"command": command, "parameters": parameters, "payload": payload, "status": status}


def dumps(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=True)


# -- series -----------------------------------------------------------------

def run_series(kinds: Sequence[str], order: int) -> dict:
    payload = {kind: SERIES_KINDS[kind](order).to_json() for kind in kinds}
    return report("series", {"kinds": list(kinds), "order": order}, payload)


def text_series(rep: dict) -> str:
    lines = []
    for kind, data in rep["payload"].items():
        s = qseries.QSeries.from_json(data)
        prefix = f"{kind}: " if len(rep["payload"]) > 1 else ""
        lines.append(prefix + str(s))
    return "\n".join(lines)


# -- torsion ----------------------------------------------------------------

def run_torsion(N: int) -> dict:
    pts = enumerate_torsion(N)
    payload = {
        "N": N,
        "points": [
            {**P.to_json(), "coords": list(torsion_coordinates(P, N)), "b_N": b_N(P, N)} for P in pts
        ],
        "pairing": pairing_table(N),
    }
    return report("torsion", {"N": N}, payload)


def text_torsion(rep: dict) -> str:
    N = rep["payload"]["N"]
    lines = [f"T(K)[{N}]: {N * N} points"]
    for P in enumerate_torsion(N):
        k = b_N(P, N)
        lines.append(f"  {P!s:<28} b_N={k:<3} x_{k}={char_xk(k, P, N)}")
    return "\n".join(lines)


# -- subgroups --------------------------------------------------------------

def run_subgroups(N: int) -> dict:
    payload = classification_report(N)
    status = "pass" if payload["roundtrip"] == "pass" else "fail"
    return report("subgroups", {"N": N}, payload, status)


def text_subgroups(rep: dict) -> str:
    p = rep["payload"]
    lines = [f"N={p['N']}  sigma(N)={p['sigma']}  records={len(p['records'])}  roundtrip={p['roundtrip']}"]
    for r in p["records"]:
        qp = CycloQUnit.from_json(r["qprime"])
        (a, b), (_, c) = r["hermite"]
        lines.append(f"  d={r['d']:<3} e={r['e']:<3} q'={qp!s:<22} hermite=[[{a},{b}],[0,{c}]]")
    return "\n".join(lines)


# -- verify -----------------------------------------------------------------

def _status(value) -> str | dict:
    return "pass" if value is True else {"fail": value}


def verify_section(N: int) -> tuple[dict, list[str]]:
    failures: list[str] = []
    section: dict = {"N": N, "sigma": sigma(N)}

    checks = torsion_checks(N)
    section["torsion"] = {name: _status(v) for name, v in checks.items()}
    failures += [f"N={N} torsion {k}: {v}" for k, v in checks.items() if v is not True]

    records = enumerate_subgroups(N)
    sub = {"count": len(records), "expected": sigma(N)}
    if len(records) != sigma(N):
        failures.append(f"N={N} subgroup count {len(records)} != {sigma(N)}")
    if N <= CLOSURE_ORACLE_MAX_N:
        by_lattice = {frozenset(torsion_coordinates(P, N) for P in r.points) for r in records}
        ok = by_lattice == subgroups_by_closure(N)
        sub["closure_oracle"] = "pass" if ok else {"fail": "lattice and closure enumerations differ"}
        if not ok:
            failures.append(f"N={N} closure oracle mismatch")
    else:
        sub["closure_oracle"] = "skipped"
    section["subgroups"] = sub

    cert = verify_universal_bijection(N)
    section["universal"] = cert.to_json()
    if not cert.passed:
        failures.append(f"N={N} universal roundtrip: {cert.failure}")

    ranks = {"O_TN": build_O_TN(N).rank(), "O_Sub": build_O_Sub(N).rank()}
    section["ranks"] = ranks
    if ranks != {"O_TN": N * N, "O_Sub": sigma(N)}:
        failures.append(f"N={N} ranks {ranks}")

    cmp = compare_formula_vs_pointwise(N)
    psi = verify_psi_star_hom(N)
    qimg = qprime_image_check(N)
    section["power_operation"] = {
        "formula_vs_pointwise": "match" if cmp["mismatches"] == 0 else {"fail": cmp["mismatches"]},
        "psi_star": psi.to_json(),
        "q_maps_to_qprime": qimg,
    }
    if cmp["mismatches"]:
        failures.append(f"N={N} power operation: {cmp['mismatches']} tables differ")
    if not psi.passed:
        failures.append(f"N={N} psi*: {psi.failure}")
    if not qimg:
        failures.append(f"N={N} q is not sent to q'")
    section["status"] = "pass" if not failures else "fail"
    return section, failures


def run_verify(n_max: int) -> tuple[dict, list[str]]:
    sections, failures = [], []
    for N in range(1, n_max + 1):
        sec, f = verify_section(N)
        sections.append(sec)
        failures += f
    status = "pass" if not failures else "fail"
    payload = {"sections": sections}
    if failures:
        payload["first_failure"] = failures[0]
    return report("verify", {"max": n_max}, payload, status), failures


def text_verify(rep: dict) -> str:
    lines = []
    for sec in rep["payload"]["sections"]:
        u = sec["universal"]
        lines.append(
            f"N={sec['N']:<3} sigma={sec['sigma']:<3} subgroups={sec['subgroups']['count']:<3} "
            f"roundtrip={'pass' if u['roundtrip'] == 'pass' else 'FAIL'}  "
            f"torsion={'pass' if all(v == 'pass' for v in sec['torsion'].values()) else 'FAIL'}  "
            f"psi*={sec['power_operation']['psi_star']['status'] if sec['power_operation']['psi_star']['status'] == 'pass' else 'FAIL'}  "
            f"[{sec['status']}]"
        )
    lines.append(f"overall: {rep['status']}")
    if "first_failure" in rep["payload"]:
        lines.append(f"first failure: {rep['payload']['first_failure']}")
    return "\n".join(lines)


# -- pullback ---------------------------------------------------------------

def run_pullback(N: int) -> dict:
    cmp = compare_formula_vs_pointwise(N)
    psi = verify_psi_star_hom(N)
    payload = {**cmp, "psi_star": psi.to_json()}
    status = "pass" if cmp["mismatches"] == 0 and psi.passed else "fail"
    return report("pullback", {"N": N}, payload, status)


def text_pullback(rep: dict) -> str:
    p = rep["payload"]
    lines = [f"N={p['N']}  tables={len(p['tables'])}  q'-exponent sign={p['qprime_exponent_sign']}"]
    for t in p["tables"]:
        cells = []
        for ent in t["entries"]:
            mono = ent["monomial"]
            if mono is None:
                continue
            factors = [
                (name if n == 1 else f"{name}^{n}")
                for name, n in (("x", mono["x"]), ("q'", mono["qp"]), ("q", mono["q"]))
                if n
            ]
            cells.append(f"m={ent['m']}: {'*'.join(factors) or '1'}")
        status = t["status"] if t["status"] == "match" else "MISMATCH"
        lines.append(f"  d={t['d']} e={t['e']} k={t['k']}: {'; '.join(cells) or '0'}  [{status}]")
    lines.append(f"psi* well-defined: {p['psi_star']['status']}")
    for reading, res in p["q_image_readings"].items():
        lines.append(f"reading {reading}: {'consistent' if res['consistent'] else 'inconsistent'} ({res['violations']} violations)")
    return "\n".join(lines)


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tatesub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="Tate curve q-expansions")
    p.add_argument("kinds", nargs="+", choices=sorted(SERIES_KINDS))
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("torsion", help="points of T(K)[N] and the pairing table")
    p.add_argument("N", type=int)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("subgroups", help="classify all order-N subgroups")
    p.add_argument("N", type=int)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run the invariant suite for N = 1..N_max")
    p.add_argument("N_max", type=int)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("pullback", help="psi* tables against the closed formula")
    p.add_argument("N", type=int)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "series":
        if args.order < 2:
            parser.error("--order must be at least 2")
        rep, text = run_series(args.kinds, args.order), text_series
        failures: list[str] = []
    else:
        n = args.N_max if args.command == "verify" else args.N
        if n < 1:
            parser.error("N must be at least 1")
        if n > args.max:
            parser.error(f"N = {n} exceeds the bound --max {args.max}")
        failures = []
        if args.command == "torsion":
            rep, text = run_torsion(n), text_torsion
        elif args.command == "subgroups":
            rep, text = run_subgroups(n), text_subgroups
        elif args.command == "verify":
            (rep, failures), text = run_verify(n), text_verify
        else:
            rep, text = run_pullback(n), text_pullback

    sys.stdout.write((dumps(rep) if args.json else text(rep)) + "\n")
    if failures or rep["status"] == "fail":
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
