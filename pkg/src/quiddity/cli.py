"""Batch command-line front end.

Exit codes: 0 success, 1 domain or usage error, 2 budget exhausted (partial
results are still emitted).  Structured output is JSON on stdout (CSV via
--format csv for reports); diagnostics go to stderr.  All output is
deterministic for fixed flags, including the worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import enumeration, geometry, morphisms
from .core import canonical_form, oplus, parse_tuple, verify
from .enumeration import (
    ClassificationReport,
    classify_irreducible,
    char_zero_witness,
    count_restricted,
    enumerate_quiddities,
    max_irreducible_size,
)
from .geometry import (
    Decomposition,
    decomposition_quiddity_mod2,
    enumerate_34_decompositions,
    enumerate_triangulations,
    quiddity_coverage,
    triangulation_quiddity,
)
from .morphisms import apply_morphism, parse_morphism, transfer_classification
from .reduction import is_reducible, is_reducible_bounded
from .rings import Ring, RingError, parse_ring_spec

BUDGET_ENV = "QUIDDITY_BUDGET_SECS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _emit_csv(header, rows):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _budget_secs():
    raw = os.environ.get(BUDGET_ENV)
    return float(raw) if raw else None


def _ring(args) -> Ring:
    if not args.ring:
        raise RingError("--ring is required for this command")
    return parse_ring_spec(args.ring)


def _cmd_verify(args) -> int:
    ring = _ring(args)
    t = parse_tuple(ring, args.tuple[0])
    verdict = verify(t)
    _emit(
        {
            "ring": ring.describe(),
            "tuple": t.literal(),
            "verdict": "quiddity" if verdict.is_quiddity else "not_quiddity",
            "sign": verdict.sign_text(),
        }
    )
    return 0


def _cmd_sum(args) -> int:
    ring = _ring(args)
    if len(args.tuple) != 2:
        raise ValueError("sum needs exactly two --tuple arguments")
    u = parse_tuple(ring, args.tuple[0])
    v = parse_tuple(ring, args.tuple[1])
    result = oplus(u, v)
    _emit(
        {
            "ring": ring.describe(),
            "left": u.literal(),
            "right": v.literal(),
            "result": result.literal(),
        }
    )
    return 0


def _cmd_canon(args) -> int:
    ring = _ring(args)
    t = parse_tuple(ring, args.tuple[0])
    _emit(
        {
            "ring": ring.describe(),
            "tuple": t.literal(),
            "canonical": canonical_form(t).literal(),
        }
    )
    return 0


def _cmd_reduce(args) -> int:
    ring = _ring(args)
    t = parse_tuple(ring, args.tuple[0])
    out = {"ring": ring.describe(), "tuple": t.literal()}
    if args.window is not None:
        res = is_reducible_bounded(t, args.window)
        out["bounded"] = True
        out["window"] = res.window
        out["overflow_skips"] = res.overflow_skips
        out["reducible"] = res.witness is not None
        out["witness"] = res.witness.to_json() if res.witness else None
        if res.witness is None:
            out["note"] = "no witness within the window; bounded evidence, not proof"
    else:
        witness = is_reducible(t)
        out["reducible"] = witness is not None
        out["witness"] = witness.to_json() if witness else None
    _emit(out)
    return 0


def _cmd_enumerate(args) -> int:
    ring = _ring(args)
    tuples = list(enumerate_quiddities(ring, args.n, workers=args.workers))
    if args.format == "csv":
        _emit_csv(["tuple"], [[t.literal()] for t in tuples])
    else:
        _emit(
            {
                "ring": ring.describe(),
                "n": args.n,
                "count": len(tuples),
                "tuples": [t.literal() for t in tuples],
            }
        )
    return 0


def _report_out(args, report: ClassificationReport) -> int:
    print(f"wall_secs={report.wall_secs:.3f}", file=sys.stderr)
    if args.format == "csv":
        _emit_csv(["size", "tuple"], report.csv_rows())
    else:
        _emit(report.to_json())
    return 2 if report.partial else 0


def _cmd_classify(args) -> int:
    ring = _ring(args)
    report = classify_irreducible(
        ring,
        args.max,
        budget_nodes=args.budget_nodes,
        budget_secs=_budget_secs(),
        workers=args.workers,
    )
    return _report_out(args, report)


def _cmd_lmax(args) -> int:
    ring = _ring(args)
    result = max_irreducible_size(
        ring,
        args.max,
        budget_nodes=args.budget_nodes,
        budget_secs=_budget_secs(),
        workers=args.workers,
    )
    print(f"wall_secs={result.wall_secs:.3f}", file=sys.stderr)
    _emit(result.to_json())
    return 2 if result.partial else 0


def _cmd_count44(args) -> int:
    ring = parse_ring_spec("Z/4")
    alphabet = enumeration._RESTRICTED_ALPHABETS.get(args.alphabet)
    if alphabet is None:
        raise ValueError(f"unknown alphabet {args.alphabet!r}; use 02 or pm1")
    out = {"ring": "Z/4", "alphabet": args.alphabet, "n": args.n}
    if args.extensions:
        count, extensions = count_restricted(ring, alphabet, args.n, with_extensions=True)
        out["count"] = count
        out["extensions"] = {
            ",".join(map(str, w)): list(pair) for w, pair in sorted(extensions.items())
        }
    else:
        out["count"] = count_restricted(ring, alphabet, args.n)
    _emit(out)
    return 0


def _decomposition_record(dec: Decomposition, ring=None) -> dict:
    rec = {
        "n": dec.n,
        "diagonals": [list(d) for d in dec.diagonals],
        "cells": [list(c) for c in dec.cells],
        "quiddity_mod2": decomposition_quiddity_mod2(dec).literal(),
    }
    if ring is not None and dec.is_triangulation:
        rec["quiddity"] = triangulation_quiddity(dec, ring).literal()
    return rec


def _cmd_polygon(args) -> int:
    ring = parse_ring_spec(args.ring) if args.ring else None
    if args.n is None and not args.json:
        raise ValueError("polygon needs --n or --json")
    if args.coverage:
        result = quiddity_coverage(args.n, cap=args.cap)
        _emit(result.to_json())
        return 0
    if args.json:
        dec = Decomposition.from_json(json.loads(args.json))
        rec = _decomposition_record(dec, ring)
        if args.svg:
            from .plotting import render_decomposition

            render_decomposition(
                dec, args.svg, labels=rec["quiddity_mod2"].split(",")
            )
            rec["svg"] = args.svg
        _emit(rec)
        return 0
    gen = (
        enumerate_triangulations(args.n)
        if args.kind == "tri"
        else enumerate_34_decompositions(args.n)
    )
    decs = list(gen)
    if args.index is not None:
        dec = decs[args.index]
        rec = _decomposition_record(dec, ring)
        rec["index"] = args.index
        if args.svg:
            from .plotting import render_decomposition

            render_decomposition(
                dec, args.svg, labels=rec["quiddity_mod2"].split(",")
            )
            rec["svg"] = args.svg
        _emit(rec)
        return 0
    records = [_decomposition_record(d, ring) for d in decs]
    if args.format == "csv":
        _emit_csv(
            ["index", "n", "diagonals", "quiddity_mod2"],
            [
                [i, r["n"], ";".join("-".join(map(str, d)) for d in r["diagonals"]), r["quiddity_mod2"]]
                for i, r in enumerate(records)
            ],
        )
    else:
        _emit({"n": args.n, "kind": args.kind, "count": len(records), "decompositions": records})
    return 0


def _cmd_transfer(args) -> int:
    ring = parse_ring_spec(args.ring) if args.ring else None
    m = parse_morphism(args.morphism, ring)
    if args.tuple:
        t = parse_tuple(m.domain, args.tuple[0])
        image = apply_morphism(m, t)
        _emit(
            {
                "morphism": m.describe(),
                "domain": m.domain.describe(),
                "codomain": m.codomain.describe(),
                "tuple": t.literal(),
                "image": image.literal(),
            }
        )
        return 0
    if args.max is None:
        raise ValueError("transfer needs --tuple or --max")
    report = classify_irreducible(
        m.domain,
        args.max,
        budget_nodes=args.budget_nodes,
        budget_secs=_budget_secs(),
        workers=args.workers,
    )
    transferred = transfer_classification(m, report)
    return _report_out(args, transferred)


def _cmd_witness0(args) -> int:
    ring = _ring(args)
    t = char_zero_witness(ring, args.n)
    verdict = verify(t)
    out = {
        "ring": ring.describe(),
        "n": args.n,
        "tuple": t.literal(),
        "verdict": "quiddity" if verdict.is_quiddity else "not_quiddity",
        "sign": verdict.sign_text(),
    }
    if args.window is not None:
        res = is_reducible_bounded(t, args.window)
        out["bounded_search"] = {
            "window": res.window,
            "reducible": res.witness is not None,
            "witness": res.witness.to_json() if res.witness else None,
            "overflow_skips": res.overflow_skips,
            "note": "bounded evidence, not proof"
            if res.witness is None
            else "witness found",
        }
    _emit(out)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="quiddity", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    def ring_flag(p, required=True):
        p.add_argument("--ring", required=required, help="ring descriptor, e.g. Z/6, F4, Z/2xZ/4, P(2), Z[50]xZ[50]")

    def tuple_flag(p):
        p.add_argument("--tuple", action="append", default=[], help="tuple literal, e.g. '(1,0),(0,1)' or '0,X,0,X'")

    def worker_flags(p):
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--budget-nodes", type=int, default=None)
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = add("verify", _cmd_verify, help="check a tuple for the quiddity property")
    ring_flag(p)
    tuple_flag(p)

    p = add("sum", _cmd_sum, help="combine two tuples with the (+) operation")
    ring_flag(p)
    tuple_flag(p)

    p = add("canon", _cmd_canon, help="canonical dihedral representative")
    ring_flag(p)
    tuple_flag(p)

    p = add("reduce", _cmd_reduce, help="search a reduction witness")
    ring_flag(p)
    tuple_flag(p)
    p.add_argument("--window", type=int, default=None, help="bounded scan window for integer entries")

    p = add("enumerate", _cmd_enumerate, help="all quiddities of one size")
    ring_flag(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = add("classify", _cmd_classify, help="canonical irreducible classes up to a size")
    ring_flag(p)
    p.add_argument("--max", type=int, required=True)
    worker_flags(p)

    p = add("lmax", _cmd_lmax, help="largest irreducible size up to a cap")
    ring_flag(p)
    p.add_argument("--max", type=int, required=True)
    worker_flags(p)

    p = add("count44", _cmd_count44, help="restricted-alphabet counts over Z/4")
    p.add_argument("--alphabet", required=True, help="02 or pm1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--extensions", action="store_true", help="include unique closing pairs for all words of length n-2")

    p = add("polygon", _cmd_polygon, help="polygon dissections, quiddities, SVG")
    ring_flag(p, required=False)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--kind", choices=["tri", "34"], default="34")
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--json", default=None, help='decomposition as {"n":..,"diagonals":[[i,j],..]}')
    p.add_argument("--svg", default=None, help="render the selected decomposition to this file")
    p.add_argument("--coverage", action="store_true", help="compare dissection quiddities with mod-2 solutions")
    p.add_argument("--cap", type=int, default=9)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = add("transfer", _cmd_transfer, help="apply a morphism to a tuple or a classification")
    p.add_argument("--morphism", required=True, help="crt:2,3 | frob | pset:2 | mod:6")
    ring_flag(p, required=False)
    tuple_flag(p)
    p.add_argument("--max", type=int, default=None)
    worker_flags(p)

    p = add("witness0", _cmd_witness0, help="irreducible witness over products with two integer factors")
    ring_flag(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (RingError, geometry.GeometryError, morphisms.MorphismError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
