"""Command line entry point: decompose, coherence, fibers, classical, dual."""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .building import (
    compute_S_phi, facet_types, facet_weyl, verify_composition_law, verify_partition,
    verify_zero_coherence,
)
from .classical import classical_type_for, compatibility_grid
from .functoriality import (
    discreteness_witness, levi_param_map, make_levi, restriction_fibers, satisfies_equivalence_criterion,
)
from .groupspec import GroupSpec, SpecError, dual_spec, load_spec
from .inertial import centralizer_connected, enumerate_inertial_params
from .linalg import invariant_factors
from .report import rows_csv, s_table_csv, to_json, vec
from .ss_classes import check_level
from .weyl import DEFAULT_BOUND, WeylBoundExceeded, generate_weyl

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND = 0, 1, 2, 3


def _header(spec: GroupSpec, command: str, N=None) -> dict:
    d = {
        "command": command,
        "group": spec.rd.name,
        "spec_hash": spec.digest,
        "version": __version__,
        "q": spec.F.q,
        "lambda": spec.F.lam,
    }
    if N is not None:
        d["order_bound"] = N
    if spec.F.ell is not None:
        d["ell"] = spec.F.ell
    return d


def _connectedness_kind(rd) -> str:
    """Exact when X / Z.Phi is torsion-free, i.e. the dual group has torsion-free pi_1."""
    if not rd.roots:
        return "exact"
    inv = invariant_factors(rd.roots, rd.rank)
    return "exact" if all(d == 1 for d in inv) else "proxy"


def cmd_decompose(spec: GroupSpec, N: int) -> tuple:
    rd, F = spec.rd, spec.F
    check_level(N, F.p)
    facets = facet_types(rd, F)
    params = enumerate_inertial_params(rd, F, N)
    kind = _connectedness_kind(rd)
    S = {f.name: [] for f in facets}
    prows = []
    coherent = True
    for phi in params:
        system = compute_S_phi(rd, F, F.lam, phi)
        for f in facets:
            for c in sorted(system[f], key=lambda c: c.rep):
                S[f.name].append({"class": vec(c.rep), "parameter": vec(phi.rep)})
        coh = verify_zero_coherence(system, rd, F)
        coherent = coherent and coh.passed
        prows.append({
            "rep": vec(phi.rep),
            "order": phi.order,
            "attained": any(system.assignment.values()),
            "centralizer_connected": centralizer_connected(rd, phi),
            "connectedness": kind,
            "coherent": coh.passed,
        })
    part = verify_partition(rd, F, F.lam, N)
    report = _header(spec, "decompose", N)
    report.update({
        "facets": [_facet_json(rd, f) for f in facets],
        "parameters": prows,
        "S": S,
        "checks": {
            "partition": part.passed,
            "coherence": coherent,
            "coherence_scope": "apartment",
            "attained": sum(p["attained"] for p in prows),
            "cardinalities": part.cardinalities,
        },
    })
    return report, EXIT_OK if part.passed else EXIT_FAIL


def _facet_json(rd, f) -> dict:
    return {
        "name": f.name,
        "nodes": list(f.labels),
        "barycenter": vec(f.barycenter),
        "weyl_order": len(facet_weyl(rd, f)),
    }


def cmd_coherence(spec: GroupSpec, N: int) -> tuple:
    rd, F = spec.rd, spec.F
    check_level(N, F.p)
    rows = []
    ok = True
    for phi in enumerate_inertial_params(rd, F, N):
        r = verify_zero_coherence(compute_S_phi(rd, F, F.lam, phi), rd, F)
        ok = ok and r.passed
        rows.append({
            "parameter": vec(phi.rep),
            "passed": r.passed,
            "face_pairs": r.face_pairs,
            "symmetries": r.symmetries,
            "condition": r.condition,
            "counterexample": r.counterexample,
        })
    law = verify_composition_law(rd, F, N)
    report = _header(spec, "coherence", N)
    report.update({"parameters": rows, "checks": {"coherence": ok, "composition_law": law, "coherence_scope": "apartment"}})
    return report, EXIT_OK if ok and law else EXIT_FAIL


def cmd_fibers(spec: GroupSpec, levi, N: int) -> tuple:
    rd, F = spec.rd, spec.F
    check_level(N, F.p)
    try:
        delta_m = [rd.simple_indices[k] for k in levi]
    except IndexError:
        raise SpecError("Levi positions must index the simple roots (0..%d)" % (len(rd.simple_indices) - 1)) from None
    M = make_levi(rd, F, delta_m)
    rows = []
    ok = True
    for phi in enumerate_inertial_params(rd, F, N):
        fib = restriction_fibers(rd, F, phi, M)
        for c in fib:
            ok = ok and levi_param_map(rd, c).rep == phi.rep
        wit = discreteness_witness(rd, F, phi)
        rows.append({
            "parameter": vec(phi.rep),
            "discrete": wit is None,
            "witness": None if wit is None else {"levi": list(wit.delta_m), "w": [list(r) for r in wit.w]},
            "fibers": [
                {"class": vec(c.rep), "equivalence": satisfies_equivalence_criterion(rd, c, M)} for c in fib
            ],
        })
    report = _header(spec, "fibers", N)
    report.update({"levi": [list(rd.roots[i]) for i in M.delta_m], "parameters": rows, "checks": {"round_trip": ok}})
    return report, EXIT_OK if ok else EXIT_FAIL


def cmd_classical(spec: GroupSpec, N: int) -> tuple:
    check_level(N, spec.F.p)
    try:
        t = classical_type_for(spec.rd)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    rows = compatibility_grid(t, spec.F.q, N)
    ok = all(r.passed for r in rows)
    report = _header(spec, "classical", N)
    report.update({
        "family": t.family,
        "rows": [
            {
                "vertex": list(r.vertex),
                "s1": vec(r.s1),
                "s2": vec(r.s2),
                "target": [{"orbit": vec(o), "multiplicity": m} for o, m in r.target.orbits],
                "passed": r.passed,
                "splittings": r.splittings,
                "fusion_flag": r.fusion,
            }
            for r in rows
        ],
        "checks": {"compatibility": ok},
    })
    return report, EXIT_OK if ok else EXIT_FAIL


def cmd_dual(spec: GroupSpec) -> str:
    return dual_spec(spec).dumps()


def _csv_for(command: str, report: dict) -> str:
    if command == "decompose":
        return s_table_csv(report)
    if command == "coherence":
        return rows_csv(["parameter", "passed", "condition"], [
            (" ".join(r["parameter"]), r["passed"], r["condition"] or "") for r in report["parameters"]])
    if command == "fibers":
        return rows_csv(["parameter", "class", "equivalence", "discrete"], [
            (" ".join(r["parameter"]), " ".join(f["class"]), f["equivalence"], r["discrete"])
            for r in report["parameters"] for f in r["fibers"]])
    return rows_csv(["vertex", "s1", "s2", "passed", "splittings"], [
        ("%d+%d" % tuple(r["vertex"]), " ".join(r["s1"]), " ".join(r["s2"]), r["passed"], r["splittings"])
        for r in report["rows"]])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="levelzero", description="Level-0 class combinatorics of p-adic groups.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("decompose", "coherence", "fibers", "classical", "dual"):
        p = sub.add_parser(name)
        p.add_argument("spec", help="group spec file (JSON or YAML)")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--ell", type=int)
        p.add_argument("--lambda", dest="lam", choices=["qlbar", "zlbar"])
        p.add_argument("--weyl-bound", type=int, default=DEFAULT_BOUND)
        if name != "dual":
            p.add_argument("--order-bound", "-N", type=int, required=True, dest="N")
            p.add_argument("--format", choices=["json", "csv"], default="json")
        if name == "fibers":
            p.add_argument("--levi", default="", help="comma separated positions in the simple system")
        if name == "decompose":
            p.add_argument("--figure", help="also render |S| per facet to this image file")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        spec = load_spec(args.spec, args.ell, args.lam)
        generate_weyl(spec.rd, args.weyl_bound)
        if args.command == "dual":
            text = cmd_dual(spec)
            code = EXIT_OK
        else:
            if args.command == "decompose":
                report, code = cmd_decompose(spec, args.N)
            elif args.command == "coherence":
                report, code = cmd_coherence(spec, args.N)
            elif args.command == "fibers":
                levi = [int(x) for x in args.levi.split(",") if x.strip()]
                report, code = cmd_fibers(spec, levi, args.N)
            else:
                report, code = cmd_classical(spec, args.N)
            text = to_json(report) if args.format == "json" else _csv_for(args.command, report)
            if getattr(args, "figure", None):
                from .plotting import plot_class_table

                plot_class_table(report, args.figure)
    except WeylBoundExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BOUND
    except (SpecError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
