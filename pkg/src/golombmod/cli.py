"""Command-line front end.

Machine output (one JSON document, or DOT) goes to stdout; human summaries
and error messages go to stderr.

Exit codes: 0 success, 1 validation error, 2 theorem FAIL or failed
certificate, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .errors import NotABasis, NotARefutation, ResourceCap, SizeCap
from .finmod import default_max_order, format_element, parse_module
from .golomb import (
    DEFAULT_MAX_OPENS,
    coprime_basis,
    generate_topology,
    subspace,
    t2_witness_integers,
)
from .modpred import check_strongly_irreducible_witness_lat, profile
from .verify import CAMPAIGN_MAX_OPENS, THEOREM_IDS, run_campaign, verify_worked_examples
from .zlattice import coset_intersect, parse_lattice, parse_lattice_coset

EXIT_OK, EXIT_INVALID, EXIT_FAIL, EXIT_CAP = 0, 1, 2, 3


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# ----------------------------------------------------------------- commands

def cmd_analyze(args) -> int:
    M = parse_module(args.module)
    _check_size(M.order)
    prof = profile(M)
    _emit(prof.to_json())
    _note(f"{M}: order {M.order}, {len(prof.maximal_submodules)} maximal submodules")
    return EXIT_OK


def _check_size(order: int) -> None:
    bound = default_max_order()
    if order > bound:
        raise SizeCap(f"module order {order} exceeds the bound {bound} (GOLOMBMOD_MAX_ORDER)")


def cmd_topology(args) -> int:
    M = parse_module(args.module)
    _check_size(M.order)
    try:
        T = generate_topology(coprime_basis(M), max_opens=args.max_opens)
    except NotABasis as exc:
        w = exc.counterexample
        _emit({"error": "NotABasis", "module": M.label, "counterexample": {
            "point": format_element(w.point),
            "coset1": [format_element(p) for p in w.coset1.points],
            "coset2": [format_element(p) for p in w.coset2.points]}})
        _note(f"coprime cosets of {M} do not form a basis: fails at {format_element(w.point)}")
        return EXIT_INVALID
    if args.space == "punctured":
        T = subspace(T, M.elements[1:])
    if args.emit == "dot":
        sys.stdout.write(T.to_dot(f"{args.space}_{M.label}"))
    else:
        doc = T.to_json()
        doc.update(module=M.label, space=args.space)
        _emit(doc)
    _note(f"{args.space} topology on {M}: {len(T.opens)} open sets")
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = THEOREM_IDS if not args.theorems else [t.strip() for t in args.theorems.split(",") if t.strip()]
    if args.max_order < 2:
        raise ValueError("max_order must be at least 2 (there are no modules of order 1 in scope)")
    if args.jobs < 1:
        raise ValueError("jobs must be positive")
    random.seed(args.seed)
    report = run_campaign(args.max_order, ids, jobs=args.jobs, converse=args.converse,
                          max_opens=args.max_opens)
    text = report.dumps(timing=args.timing)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    s = report.summary
    _note(f"{report.family}: PASS {s['PASS']}, FAIL {s['FAIL']}, VACUOUS {s['VACUOUS']}"
          f" ({report.duration:.1f}s)")
    return report.exit_code


def _coset_json(c) -> dict:
    return {"rep": list(c.rep), "lattice": [list(v) for v in c.lat.basis], "text": str(c)}


def cmd_witness(args) -> int:
    if args.kind == "t2":
        c1, c2 = t2_witness_integers(args.m, args.n)
        meet = coset_intersect(c1, c2)
        ok = meet.disjoint and (args.m,) in c1 and (args.n,) in c2
        _emit({"kind": "t2", "m": args.m, "n": args.n, "coset1": _coset_json(c1),
               "coset2": _coset_json(c2), "disjoint": meet.disjoint, "valid": ok})
        _note(f"{c1} and {c2}: {'disjoint' if meet.disjoint else 'NOT disjoint'}")
        return EXIT_OK if ok else EXIT_FAIL

    if args.kind == "coset":
        c1, c2 = parse_lattice_coset(args.first), parse_lattice_coset(args.second)
        meet = coset_intersect(c1, c2)
        doc = {"kind": meet.kind, "coset1": _coset_json(c1), "coset2": _coset_json(c2)}
        ok = True
        if meet.witness is not None:
            doc["witness"] = list(meet.witness)
            ok = meet.witness in c1 and meet.witness in c2
        if meet.lattice is not None:
            doc["lattice"] = [list(v) for v in meet.lattice.basis]
        if meet.points:
            doc["points"] = [list(p) for p in meet.points]
        doc["valid"] = ok
        _emit(doc)
        _note(f"{c1} & {c2}: {meet.kind}")
        return EXIT_OK if ok else EXIT_FAIL

    N, K, L = (parse_lattice(t) for t in (args.N, args.K, args.L))
    try:
        cert = check_strongly_irreducible_witness_lat(N, K, L)
    except NotARefutation as exc:
        _emit({"kind": "strongirr", "valid": False, "failed": exc.failed, "reason": str(exc)})
        _note(f"not a refutation: {exc}")
        return EXIT_FAIL
    ok = cert.recheck()
    _emit({"kind": "strongirr", "valid": ok, "N": str(N), "K": str(K), "L": str(L),
           "meet": str(cert.meet), "k_outside": list(cert.k_outside),
           "l_outside": list(cert.l_outside)})
    _note(f"K & L = {cert.meet} lies in N; {format_element(cert.k_outside)} in K and "
          f"{format_element(cert.l_outside)} in L lie outside N")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_examples(args) -> int:
    report = verify_worked_examples()
    sys.stdout.write(report.dumps())
    for c in report.cases:
        _note(f"{c.verdict:7} {c.id}")
    return report.exit_code


# ------------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors (exit 1); 2 is reserved for FAIL
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="golombmod",
                description="Coprime-coset topologies on Z-modules.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="predicate profile of a finite module")
    a.add_argument("module", nargs="?", help='invariant factors, e.g. "8" or "2x4"')
    a.add_argument("--module", dest="module_opt")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("topology", help="open sets of the coprime-coset topology")
    t.add_argument("module", nargs="?")
    t.add_argument("--module", dest="module_opt")
    t.add_argument("--space", choices=("full", "punctured"), default="full")
    t.add_argument("--max-opens", type=int, default=None,
                   help=f"open-set cap (default {DEFAULT_MAX_OPENS} or GOLOMBMOD_MAX_OPENS)")
    t.add_argument("--emit", choices=("json", "dot"), default="json")
    t.set_defaults(func=cmd_topology)

    v = sub.add_parser("verify", help="theorem campaign over all groups up to an order")
    v.add_argument("--max-order", type=int, default=16)
    v.add_argument("--theorems", default="", help="comma-separated ids (default: all)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    v.add_argument("--converse", action="store_true",
                   help="also evaluate conclusions when hypotheses fail")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-opens", type=int, default=CAMPAIGN_MAX_OPENS)
    v.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="build and re-check certificates over Z^n")
    wk = w.add_subparsers(dest="kind", required=True)
    w2 = wk.add_parser("t2", help="disjoint coprime cosets around m and n in Z")
    w2.add_argument("m", type=int)
    w2.add_argument("n", type=int)
    wc = wk.add_parser("coset", help='intersect two cosets like "(1,1)+[(1,0)]"')
    wc.add_argument("first")
    wc.add_argument("second")
    ws = wk.add_parser("strongirr", help="certify K & L <= N with K, L not inside N")
    ws.add_argument("N", help='lattice like "[(2,0),(0,2)]"')
    ws.add_argument("K")
    ws.add_argument("L")
    w.set_defaults(func=cmd_witness)

    e = sub.add_parser("examples", help="re-run the worked examples")
    e.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("analyze", "topology"):
        args.module = args.module_opt or args.module
        if not args.module:
            parser.error(f"{args.command}: a module is required")
    try:
        return args.func(args)
    except ResourceCap as exc:
        _note(f"resource cap: {exc}")
        return EXIT_CAP
    except ValueError as exc:
        _note(f"error: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
