"""Command-line front end.

Commands: verify, switch, cospectral, spectrum, search, demo.  Exit codes:
0 = success / valid, 1 = checked and negative, 2 = usage or parse error.
Pass --json for stable machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .cospectral import (
    default_moment_count,
    fingerprint,
    g_cospectral,
    pi_cospectral,
)
from .fixtures import DEMOS
from .formats import (
    FormatError,
    load_graph,
    load_partition,
    save_graph,
    save_partition,
)
from .graphs import GainGraph
from .reps import REP_KINDS, hermitian_spectrum, make_rep
from .search import SearchLimits, find_wqh_partitions, is_nontrivial
from .switching import (
    WQHPartition,
    switch_graph,
    verify_gwqh,
    verify_piwqh,
    verify_theorem_gcosp,
    verify_theorem_picosp,
)

OK, NEGATIVE, USAGE = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, code: int = USAGE):
        super().__init__(message)
        self.code = code


def _emit(args, obj: dict, human: str):
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(human)


def _load(path, loader):
    try:
        return loader(path)
    except FormatError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _rep_for(args, graph: GainGraph):
    if not args.rep:
        return None
    if args.rep not in REP_KINDS:
        raise CliError(f"unknown representation {args.rep!r}; choose from {REP_KINDS}")
    try:
        return make_rep(graph.group, args.rep)
    except ValueError as exc:
        raise CliError(str(exc))


def _verdict(args, graph, part):
    rep = _rep_for(args, graph)
    if rep is None:
        return verify_gwqh(graph, part), rep
    return verify_piwqh(graph, part, rep, args.tol), rep


def _verdict_obj(verdict) -> dict:
    return {
        "valid": verdict.valid,
        "mode": verdict.mode,
        "failures": [
            {"condition": f.condition, "witness": f.witness} for f in verdict.failures
        ],
        "cases": [
            {
                "vertex": r.vertex,
                "pair": r.pair_index,
                "case": r.case,
                "g1": r.g1.label if r.g1 is not None else "0",
                "g2": r.g2.label if r.g2 is not None else "0",
                "both_cases": r.both_cases,
            }
            if r.case == "b"
            else {"vertex": r.vertex, "pair": r.pair_index, "case": "a"}
            for r in verdict.case_resolutions
        ],
    }


def cmd_verify(args) -> int:
    graph = _load(args.graph, load_graph)
    part = _load(args.partition, load_partition)
    try:
        part.validate_for(graph.n)
    except ValueError as exc:
        raise CliError(str(exc))
    verdict, _ = _verdict(args, graph, part)
    _emit(args, _verdict_obj(verdict), verdict.summary())
    return OK if verdict.valid else NEGATIVE


def cmd_switch(args) -> int:
    graph = _load(args.graph, load_graph)
    part = _load(args.partition, load_partition)
    verdict, rep = _verdict(args, graph, part)
    if not verdict.valid:
        _emit(args, _verdict_obj(verdict), verdict.summary())
        return NEGATIVE
    switched = switch_graph(graph, part, verdict)
    if rep is None:
        identity_ok = verify_theorem_gcosp(graph, part, verdict)
        certified = "exact conjugation identity"
    else:
        identity_ok = verify_theorem_picosp(graph, part, rep, args.tol, verdict)
        certified = f"represented conjugation identity ({rep.kind})"
    save_graph(switched, args.out)
    removed = sorted(graph.underlying_edges() - switched.underlying_edges())
    added = sorted(switched.underlying_edges() - graph.underlying_edges())
    obj = {
        "out": str(args.out),
        "identity_certified": identity_ok,
        "certificate": certified,
        "edges_removed": [list(e) for e in removed],
        "edges_added": [list(e) for e in added],
    }
    human = (
        f"wrote {args.out}\n"
        f"certified: {certified}: {'holds' if identity_ok else 'FAILS'}\n"
        f"removed {len(removed)} edge(s): {removed}\n"
        f"added {len(added)} edge(s): {added}"
    )
    _emit(args, obj, human)
    return OK if identity_ok else NEGATIVE


def cmd_cospectral(args) -> int:
    g1 = _load(args.graph1, load_graph)
    g2 = _load(args.graph2, load_graph)
    if g1.group != g2.group:
        raise CliError("the two graphs are over different groups")
    rep = _rep_for(args, g1)
    if rep is None:
        depth = args.moments or default_moment_count(g1)
        if g1.n != g2.n:
            _emit(args, {"cospectral": False, "reason": "vertex counts differ"},
                  "not cospectral: vertex counts differ")
            return NEGATIVE
        f1, f2 = fingerprint(g1, depth), fingerprint(g2, depth)
        diff = f1.first_difference(f2)
        same = diff is None
        obj = {
            "mode": "G",
            "moments": depth,
            "cospectral": same,
            "first_difference": diff,
        }
        human = (
            f"cospectral up to {depth} moments (exact)" if same
            else f"not cospectral: fingerprints differ at h={diff}"
        )
        _emit(args, obj, human)
        return OK if same else NEGATIVE
    if g1.n != g2.n:
        _emit(args, {"cospectral": False, "reason": "vertex counts differ"},
              "not cospectral: vertex counts differ")
        return NEGATIVE
    s1 = hermitian_spectrum(rep.apply_mat(g1.adjacency()), tol=max(args.tol, 1e-10))
    s2 = hermitian_spectrum(rep.apply_mat(g2.adjacency()), tol=max(args.tol, 1e-10))
    gap = float(np.abs(s1 - s2).max(initial=0.0))
    same = gap <= args.tol
    obj = {
        "mode": f"pi({rep.kind})",
        "cospectral": same,
        "max_gap": gap,
        "spectrum1": [round(x, 12) for x in s1],
        "spectrum2": [round(x, 12) for x in s2],
    }
    human = (
        f"pi({rep.kind})-spectra: max eigenvalue gap {gap:.3e} "
        f"({'cospectral' if same else 'NOT cospectral'} at tol {args.tol:.1e})"
    )
    _emit(args, obj, human)
    return OK if same else NEGATIVE


def cmd_spectrum(args) -> int:
    graph = _load(args.graph, load_graph)
    rep = _rep_for(args, graph) or make_rep(graph.group, "trivial")
    spec = hermitian_spectrum(rep.apply_mat(graph.adjacency()), tol=max(args.tol, 1e-10))
    vals = [round(float(x), 12) for x in spec]
    _emit(
        args,
        {"rep": rep.kind, "spectrum": vals},
        f"pi({rep.kind})-spectrum ({len(vals)} values):\n"
        + " ".join(f"{v:.6g}" for v in vals),
    )
    return OK


def cmd_search(args) -> int:
    graph = _load(args.graph, load_graph)
    rep = None
    if args.mode == "pi":
        if not args.rep:
            raise CliError("--mode pi needs --rep")
        rep = _rep_for(args, graph)
    limits = SearchLimits(
        max_vertices=max(SearchLimits.max_vertices, graph.n),
        max_cells=args.max_cells,
        max_partitions=args.max_partitions,
        iso_budget_small_group=args.iso_budget,
        iso_budget_large_group=args.iso_budget,
    )
    result = find_wqh_partitions(graph, limits, args.mode, rep, args.tol)
    entries = []
    for part in result.partitions:
        verdict = (
            verify_gwqh(graph, part) if rep is None
            else verify_piwqh(graph, part, rep, args.tol)
        )
        iso = is_nontrivial(graph, part, limits, verdict)
        entries.append((part, iso))
    obj = {
        "mode": args.mode if rep is None else f"pi({rep.kind})",
        "complete": result.complete,
        "examined": result.examined,
        "count": len(entries),
        "partitions": [
            {
                "cells": part.to_lists(),
                "nontrivial": iso.result == "not-isomorphic",
                "isomorphism": iso.result,
                "reason": iso.reason,
            }
            for part, iso in entries
        ],
    }
    lines = [
        f"{len(entries)} partition(s) found "
        f"({'complete' if result.complete else 'partial: ' + result.note})"
    ]
    for part, iso in entries:
        status = {
            "not-isomorphic": "nontrivial",
            "isomorphic": "trivial",
            "inconclusive": f"inconclusive ({iso.reason})",
        }[iso.result]
        lines.append(f"  {part.to_lists()}  [{status}]")
    _emit(args, obj, "\n".join(lines))
    return OK


def cmd_demo(args) -> int:
    if args.name not in DEMOS:
        raise CliError(
            f"unknown demo {args.name!r}; available: {', '.join(sorted(DEMOS))}"
        )
    graph, part = DEMOS[args.name]["build"]()
    outdir = Path(args.dir)
    outdir.mkdir(parents=True, exist_ok=True)
    gpath = outdir / f"{args.name}.graph.json"
    ppath = outdir / f"{args.name}.partition.json"
    save_graph(graph, gpath, name=args.name)
    save_partition(part, ppath)
    _emit(
        args,
        {"graph": str(gpath), "partition": str(ppath)},
        f"wrote {gpath}\nwrote {ppath}",
    )
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="numeric tolerance (default 1e-8)")
    common.add_argument("--rep", choices=REP_KINDS, default=None,
                        help="representation for pi-mode operations")
    common.add_argument("--seed", type=int, default=0, help="random seed")

    parser = argparse.ArgumentParser(
        prog="gainswitch",
        description="Switching constructions and cospectrality checks for gain graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="check a partition against a graph")
    p.add_argument("graph")
    p.add_argument("partition")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("switch", parents=[common],
                       help="write the switched graph and certify the identity")
    p.add_argument("graph")
    p.add_argument("partition")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_switch)

    p = sub.add_parser("cospectral", parents=[common],
                       help="compare two graphs (exact moments or spectra)")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--moments", type=int, default=None,
                   help="number of exact moments (default n*|G|)")
    p.set_defaults(func=cmd_cospectral)

    p = sub.add_parser("spectrum", parents=[common],
                       help="print the represented spectrum of one graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("search", parents=[common],
                       help="enumerate valid partitions of a graph")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("G", "pi"), default="G")
    p.add_argument("--max-partitions", type=int,
                   default=SearchLimits.max_partitions)
    p.add_argument("--max-cells", type=int, default=SearchLimits.max_cells)
    p.add_argument("--iso-budget", type=int,
                   default=SearchLimits.iso_budget_small_group)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("demo", parents=[common],
                       help="write a built-in fixture graph and partition")
    p.add_argument("name")
    p.add_argument("--dir", default=".")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
