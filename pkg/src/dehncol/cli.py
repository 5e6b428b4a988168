"""dehncol command-line interface.

Every subcommand writes JSON to stdout (or CSV with ``--csv``). ``--plot DIR``
also writes PNG figures. Exit codes: 0 ok, 1 verification failure, 2 input
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .algebra import verify_chain_complex, verify_theta_cocycle
from .coloring import (
    BudgetExceeded,
    coloring_affine_classes,
    coloring_counts,
    enumerate_colorings,
    is_odd_prime,
    is_trivial_by_crossings,
    solve_coloring_space,
)
from .diagram import PDSyntaxError, PDValidationError, TopologyError, extract_topology, parse_pd_code
from .invariant import log_bound, mincol_bounds, phi_invariant, verify_weights
from .palettes import analyze_all, candidate_palettes, kernel_analysis
from .tables import TableError, load_knot_table, lookup

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("p must be an integer, got %r" % text) from None
    if not is_odd_prime(p):
        raise argparse.ArgumentTypeError("p must be an odd prime; %d is not" % p)
    return p


def _prime_list(text: str) -> List[int]:
    return [_prime(s) for s in text.split(",") if s.strip()]


def _resolve_diagram(args):
    """(name, PDCode) from --pd or --knot (optionally with --table)."""
    if getattr(args, "pd", None):
        try:
            pd = parse_pd_code(args.pd)
        except (PDSyntaxError, PDValidationError) as exc:
            raise InputError("invalid PD code: %s" % exc) from None
        name = "pd:" + hashlib.sha256(pd.to_text().encode()).hexdigest()[:12]
        return name, pd
    if getattr(args, "knot", None):
        table = None
        if args.table:
            try:
                table = load_knot_table(args.table)
            except (OSError, TableError) as exc:
                raise InputError("cannot load knot table: %s" % exc) from None
        try:
            entry = lookup(args.knot, table)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
        return entry.name, entry.pd
    raise InputError("give --pd CODE or --knot NAME")


def _topology(pd):
    try:
        return extract_topology(pd)
    except TopologyError as exc:
        raise InputError("PD code is not a knot projection: %s" % exc) from None


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _emit_csv(header: Sequence[str], rows) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)


def _cached(args, knot: str, p: int, kind: str, inputs: dict, compute):
    if not args.store:
        return compute()
    from .store import ResultsStore

    rec, _ = ResultsStore(args.store).get_or_compute(knot, p, kind, inputs, compute)
    return rec.output_json()


# -- colorings ---------------------------------------------------------------


def cmd_colorings(args) -> int:
    name, pd = _resolve_diagram(args)
    topo = _topology(pd)
    p = args.p
    space = solve_coloring_space(topo, p)
    if (args.enumerate or args.classes) and space.count > args.budget:
        raise BudgetExceeded("%d colorings exceed the enumeration budget %d" % (space.count, args.budget))

    def compute():
        counts = coloring_counts(space, args.budget)
        out = {
            "knot": name,
            "pd": pd.to_text(),
            "p": p,
            "regions": topo.n_regions,
            "dimension": space.dimension,
            "total": counts["total"],
            "trivial": counts["trivial"],
            "nontrivial": counts["nontrivial"],
        }
        if counts["nontrivial"] == 0:
            out["note"] = "not Dehn %d-colorable on this diagram" % p
        if args.enumerate:
            out["colorings"] = [
                {"colors": list(c), "trivial": is_trivial_by_crossings(topo, c)}
                for c in enumerate_colorings(space, args.budget)
            ]
        if args.classes:
            out["classes"] = [
                {"representative": list(cls[0]), "size": len(cls), "colors_used": len(set(cls[0]))}
                for cls in coloring_affine_classes(space, args.budget)
            ]
        return out

    inputs = {"pd": pd.to_text(), "enumerate": args.enumerate, "classes": args.classes}
    out = _cached(args, name, p, "colorings", inputs, compute)

    if args.csv:
        if args.enumerate:
            _emit_csv(
                ["index", "trivial"] + ["r%d" % r for r in range(topo.n_regions)],
                ([i, int(c["trivial"])] + c["colors"] for i, c in enumerate(out["colorings"])),
            )
        elif args.classes:
            _emit_csv(
                ["class", "size", "colors_used", "representative"],
                ([i, c["size"], c["colors_used"], " ".join(map(str, c["representative"]))] for i, c in enumerate(out["classes"])),
            )
        else:
            _emit_csv(
                ["knot", "p", "regions", "dimension", "total", "trivial", "nontrivial"],
                [[name, p, out["regions"], out["dimension"], out["total"], out["trivial"], out["nontrivial"]]],
            )
    else:
        _emit_json(out)

    if args.plot:
        from .plotting import plot_palette_sizes

        sizes = [len(set(c)) for c in enumerate_colorings(space, args.budget) if not is_trivial_by_crossings(topo, c)]
        path = plot_palette_sizes(sizes, p, Path(args.plot) / ("%s_p%d_palettes.png" % (_safe(name), p)), log_bound(p))
        print("wrote %s" % path, file=sys.stderr)
    return EXIT_OK


def _safe(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "_-" else "_" for ch in name)


# -- invariant ---------------------------------------------------------------


def cmd_invariant(args) -> int:
    name, pd = _resolve_diagram(args)
    topo = _topology(pd)
    p = args.p

    def compute():
        space = solve_coloring_space(topo, p)
        phi = phi_invariant(topo, p, args.flavor, space, workers=args.workers, budget=args.budget)
        phi_nt = phi if args.flavor == "nt" else phi_invariant(topo, p, "nt", space, args.workers, args.budget)
        return {"knot": name, "phi": phi.to_json(), "bounds": mincol_bounds(topo, p, phi_nt, space).to_json()}

    inputs = {"pd": pd.to_text(), "flavor": args.flavor}
    out = _cached(args, name, p, "invariant-" + args.flavor, inputs, compute)

    if args.csv:
        b = out["bounds"]
        _emit_csv(
            ["knot", "p", "flavor", "value", "count", "lower", "lower_tag", "upper"],
            (
                [name, p, out["phi"]["flavor"], v, n, b["lower"], b["lower_tag"], b["upper"]]
                for v, n in out["phi"]["counts"].items()
            ),
        )
    else:
        _emit_json(out)
    if not out["bounds"]["colorable"]:
        print("not Dehn %d-colorable on this diagram" % p, file=sys.stderr)

    if args.plot:
        from .invariant import PhiMultiset
        from .plotting import plot_phi

        phi = PhiMultiset.from_json(out["phi"])
        path = plot_phi(phi, Path(args.plot) / ("%s_p%d_phi_%s.png" % (_safe(name), p, args.flavor)), "%s, p=%d" % (name, p))
        print("wrote %s" % path, file=sys.stderr)
    return EXIT_OK


# -- palette -----------------------------------------------------------------


def cmd_palette(args) -> int:
    p = args.p
    if args.all_candidates:
        try:
            candidate_palettes(p)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        report = analyze_all(p)
        analyses = list(report.analyses)
        out = report.to_json()
    elif args.set:
        try:
            S = [int(s) for s in args.set.split(",") if s.strip()]
        except ValueError:
            raise InputError("--set must be comma-separated integers") from None
        if not S:
            raise InputError("--set is empty")
        analysis = kernel_analysis(S, p)
        analyses = [analysis]
        out = analysis.to_json()
    else:
        raise InputError("give --set S or --all-candidates")

    if args.csv:
        _emit_csv(
            ["p", "palette", "generators", "kernel_rank", "theta", "verdict", "relations"],
            (
                [p, " ".join(map(str, a.palette)), len(a.generators), a.rank,
                 " ".join(map(str, a.theta_values)), a.verdict, a.relations()]
                for a in analyses
            ),
        )
    else:
        _emit_json(out)

    if args.plot:
        from .plotting import plot_boundary_matrix

        for a in analyses:
            fname = "p%d_S%s_boundary.png" % (p, "-".join(map(str, a.palette)))
            print("wrote %s" % plot_boundary_matrix(a, Path(args.plot) / fname), file=sys.stderr)
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    results = []
    for p in args.p:
        if args.suite == "cocycle":
            rep = verify_theta_cocycle(p)
        elif args.suite == "chain":
            rep = verify_chain_complex(p)
        else:
            name, pd = _resolve_diagram(args)
            rep = verify_weights(_topology(pd), p, args.budget)
        results.append(rep)
    ok = all(r.passed for r in results)
    if args.csv:
        _emit_csv(
            ["suite", "p", "passed", "checked", "counterexample"],
            (
                [args.suite, r.p, int(r.passed), json.dumps(r.checked, sort_keys=True),
                 json.dumps(r.counterexample) if r.counterexample else ""]
                for r in results
            ),
        )
    else:
        _emit_json({"suite": args.suite, "passed": ok, "results": [r.to_json() for r in results]})
    if not ok:
        bad = next(r for r in results if not r.passed)
        print("verification failed at p=%d: %s" % (bad.p, json.dumps(bad.counterexample)), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .coloring import enumeration_budget

    parser = argparse.ArgumentParser(prog="dehncol", description="Dehn colorings and local biquandle cocycle invariants")
    parser.add_argument("--version", action="version", version="dehncol " + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", action="store_true", help="CSV instead of JSON on stdout")
    common.add_argument("--plot", metavar="DIR", help="also write PNG figures into DIR")
    common.add_argument("--budget", type=int, default=enumeration_budget(), help="max colorings to enumerate")

    diagram = argparse.ArgumentParser(add_help=False)
    g = diagram.add_mutually_exclusive_group()
    g.add_argument("--pd", help='PD code, e.g. "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)" or JSON')
    g.add_argument("--knot", help="knot name from the built-in table or --table")
    diagram.add_argument("--table", help="knot table (CSV with name,pd or JSON)")
    diagram.add_argument("--store", help="JSON-lines results store to reuse and append to")

    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("colorings", parents=[common, diagram], help="count and list Dehn p-colorings")
    c.add_argument("--p", type=_prime, required=True)
    c.add_argument("--enumerate", action="store_true")
    c.add_argument("--classes", action="store_true", help="affine equivalence classes of nontrivial colorings")
    c.set_defaults(func=cmd_colorings)

    i = sub.add_parser("invariant", parents=[common, diagram], help="Phi multiset and mincol bounds")
    i.add_argument("--p", type=_prime, required=True)
    i.add_argument("--flavor", choices=("nt", "all"), default="nt")
    i.add_argument("--workers", type=int, default=1)
    i.set_defaults(func=cmd_invariant)

    pa = sub.add_parser("palette", parents=[common], help="kernel analysis of color palettes")
    pa.add_argument("--p", type=_prime, required=True)
    grp = pa.add_mutually_exclusive_group()
    grp.add_argument("--set", help="comma-separated palette, e.g. 0,1,2,4")
    grp.add_argument("--all-candidates", action="store_true")
    pa.set_defaults(func=cmd_palette)

    v = sub.add_parser("verify", parents=[common, diagram], help="exhaustive verification suites")
    v.add_argument("--p", type=_prime_list, required=True, help="prime or comma-separated primes")
    v.add_argument("--suite", choices=("cocycle", "chain", "weights"), default="cocycle")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
