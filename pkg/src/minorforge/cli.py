"""Command-line front end: generation, extraction, verification, paths,
seeded experiment sweeps, DOT export.

Exit codes: 0 success, 2 a construction or verification ran correctly
but failed its certificate, 1 usage or I/O trouble.  Rationals on the
command line are always ``p/q`` text, never floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .build import build_dense_minor, build_dense_minor_bipartite
from .connectivity import vertex_connectivity
from .errors import (
    InvalidBipartitionError,
    MinorforgeError,
    NotAnEdgeError,
    OrderTooSmallError,
    ParseError,
    UnknownVertexError,
)
from .extract import (
    dense_connected_minor,
    k_connected_subgraph,
    mader_min_degree_minor,
)
from .graph import (
    Graph,
    average_degree,
    complete_graph,
    is_eps_t_dense,
    random_bipartite,
    random_graph,
)
from .graphio import (
    dump_report,
    format_fraction,
    make_report,
    parse_fraction,
    parse_graph,
    parse_model,
    serialize_graph,
    serialize_model,
    to_dot,
)
from .model import MinorModel, validate_model
from .params import DEFAULT_C_SCALE, sqrt_log_inv
from .paths import PathFamily, Separation, find_linkage, menger
from .rng import Rng, derive_seed

__all__ = ["main"]


# -- flag parsing helpers ----------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _vertex_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok != "")
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _pair_list(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    try:
        for item in text.split(","):
            if not item:
                continue
            a, b = item.split(":")
            pairs.append((int(a), int(b)))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected u:v,u:v pairs, got {text!r}"
        ) from None
    return tuple(pairs)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _print_result(fields: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(fields, indent=2, sort_keys=True))
    else:
        for key, value in fields.items():
            if key == "fragments":
                for i, frag in enumerate(value):
                    print(f"fragment {i}: {' '.join(map(str, frag))}")
            elif key == "paths":
                for p in value:
                    print("path: " + " ".join(map(str, p)))
            else:
                print(f"{key}: {value}")


# -- subcommands -------------------------------------------------------------


def _cmd_gen(args) -> int:
    modes = sum(
        x is not None for x in (args.n, args.complete, args.bipartite)
    )
    if modes != 1:
        return _usage("pick exactly one of --n, --complete, --bipartite")
    p = args.p if args.p is not None else Fraction(1, 2)
    if not 0 <= p <= 1:
        return _usage("--p must lie in [0,1]")
    side = None
    if args.complete is not None:
        if args.complete < 0:
            return _usage("--complete must be nonnegative")
        g = complete_graph(args.complete)
    elif args.bipartite is not None:
        a, b = args.bipartite
        if a < 0 or b < 0:
            return _usage("side sizes must be nonnegative")
        g = random_bipartite(a, b, p, Rng(args.seed))
        side = a
    else:
        if args.n < 0:
            return _usage("--n must be nonnegative")
        g = random_graph(args.n, p, Rng(args.seed))
    _emit(serialize_graph(g, side), args.out)
    return 0


def _pattern_summary(model: MinorModel) -> dict:
    pattern = validate_model(model).pattern
    fields: dict = {
        "result": "ok",
        "fragments_count": len(model.fragments),
        "pattern_order": pattern.n,
        "pattern_edges": pattern.m,
        "pattern_min_degree": pattern.min_degree() if pattern.n else 0,
    }
    if pattern.n >= 2:
        pairs = pattern.n * (pattern.n - 1) // 2
        fields["nonedges"] = pairs - pattern.m
        fields["density"] = format_fraction(Fraction(pattern.m, pairs))
    return fields


def _cmd_extract(args) -> int:
    g, side = parse_graph(_read(args.graph))
    mode = args.mode
    if mode in ("mader", "dense-connected"):
        if args.d is None:
            return _usage(f"extract {mode} needs --d")
        model = (
            mader_min_degree_minor(g, args.d)
            if mode == "mader"
            else dense_connected_minor(g, args.d)
        )
        fields = _pattern_summary(model)
        if mode == "dense-connected":
            pattern = validate_model(model).pattern
            fields["pattern_connectivity"] = vertex_connectivity(pattern)
    elif mode == "dense-minor":
        if args.eps is None or args.t is None:
            return _usage("extract dense-minor needs --eps and --t")
        c_scale = args.c_scale if args.c_scale is not None else DEFAULT_C_SCALE
        kwargs = {}
        if args.attempts is not None:
            kwargs["max_attempts"] = args.attempts
        model = build_dense_minor(
            g, args.eps, args.t, c_scale, Rng(args.seed), **kwargs
        )
        fields = _pattern_summary(model)
    elif mode == "dense-minor-bipartite":
        if args.eps is None or args.t is None:
            return _usage("extract dense-minor-bipartite needs --eps and --t")
        if side is None:
            return _usage("input graph lacks a bipartition header")
        c_scale = args.c_scale if args.c_scale is not None else DEFAULT_C_SCALE
        kwargs = {}
        if args.attempts is not None:
            kwargs["max_attempts"] = args.attempts
        model = build_dense_minor_bipartite(
            g, range(side), range(side, g.n), args.eps, args.t, c_scale,
            Rng(args.seed), **kwargs
        )
        fields = _pattern_summary(model)
    elif mode == "kconn":
        if args.k is None:
            return _usage("extract kconn needs --k")
        verts = k_connected_subgraph(g, args.k)
        model = MinorModel(g, [frozenset((v,)) for v in verts])
        fields = {
            "result": "ok",
            "order": len(verts),
            "connectivity_at_least": args.k,
            "vertices": " ".join(map(str, verts)),
        }
    else:  # pragma: no cover - argparse restricts choices
        return _usage(f"unknown extract mode {mode!r}")
    if args.out is not None:
        _emit(serialize_model(model), args.out)
    if args.format == "json":
        fields["fragments"] = [sorted(f) for f in model.fragments]
    _print_result(fields, args.format)
    return 0


def _cmd_verify(args) -> int:
    g, _ = parse_graph(_read(args.graph))
    model = parse_model(_read(args.model), g)
    report = validate_model(model)
    if not report.valid:
        subject, reason = report.violations[0]
        _print_result(
            {"result": "invalid", "violation": f"fragment {subject}: {reason}"},
            args.format,
        )
        return 2
    pattern = report.pattern
    ok = is_eps_t_dense(pattern, args.eps, args.t)
    fields: dict = {
        "result": "valid" if ok else "invalid",
        "pattern_order": pattern.n,
        "pattern_edges": pattern.m,
    }
    if pattern.n != args.t:
        fields["violation"] = f"pattern order {pattern.n} differs from t"
    elif pattern.n >= 2:
        pairs = pattern.n * (pattern.n - 1) // 2
        fields["nonedges"] = pairs - pattern.m
        fields["density"] = format_fraction(Fraction(pattern.m, pairs))
        if not ok:
            fields["violation"] = "density below the threshold"
    _print_result(fields, args.format)
    return 0 if ok else 2


def _family_fields(fam: PathFamily) -> dict:
    return {"result": "paths", "paths": [list(p) for p in fam.paths]}


def _separation_fields(sep: Separation) -> dict:
    cut = sorted(sep.a & sep.b)
    return {
        "result": "separation",
        "order": sep.order,
        "cut": " ".join(map(str, cut)),
        "side_a": " ".join(map(str, sorted(sep.a))),
        "side_b": " ".join(map(str, sorted(sep.b))),
    }


def _cmd_paths(args) -> int:
    g, _ = parse_graph(_read(args.graph))
    if args.pairs is not None:
        fam = find_linkage(g, args.pairs)
        fields = (
            {"result": "not-linkable"} if fam is None else _family_fields(fam)
        )
    else:
        if args.s is None or args.t is None or args.k is None:
            return _usage("paths needs --pairs, or --s with --t and --k")
        outcome = menger(g, args.s, args.t, args.k)
        fields = (
            _family_fields(outcome)
            if isinstance(outcome, PathFamily)
            else _separation_fields(outcome)
        )
    if args.out is not None:
        buf = io.StringIO()
        stdout, sys.stdout = sys.stdout, buf
        try:
            _print_result(fields, args.format)
        finally:
            sys.stdout = stdout
        _emit(buf.getvalue(), args.out)
    else:
        _print_result(fields, args.format)
    return 0


def _as_list(value) -> list:
    return value if isinstance(value, list) else [value]


def _config_error(message: str) -> ParseError:
    return ParseError(f"config: {message}")


def _load_config(path: str) -> dict:
    try:
        raw = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise _config_error(f"bad JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise _config_error("top level must be an object")
    ens = raw.get("ensemble")
    if not isinstance(ens, dict) or "kind" not in ens:
        raise _config_error("ensemble object with a kind is required")
    kind = ens["kind"]
    if kind not in ("gnp", "bipartite"):
        raise _config_error(f"unknown ensemble kind {kind!r}")
    cfg: dict = {"kind": kind}
    try:
        if kind == "gnp":
            cfg["n"] = int(ens["n"])
        else:
            cfg["a"] = int(ens["a"])
            cfg["b"] = int(ens["b"])
        cfg["count"] = int(ens.get("count", 1))
        cfg["p_grid"] = [parse_fraction(str(p)) for p in _as_list(ens.get("p", "1/2"))]
        cfg["eps_grid"] = [
            parse_fraction(str(e)) for e in _as_list(raw.get("eps", []))
        ]
        cfg["t_grid"] = [int(t) for t in _as_list(raw.get("t", []))]
        cfg["c_scale"] = parse_fraction(str(raw.get("c_scale", DEFAULT_C_SCALE)))
        cfg["seed"] = int(raw.get("seed", 0))
        cfg["attempts"] = (
            int(raw["attempts"]) if "attempts" in raw else None
        )
        cfg["out"] = raw.get("out")
    except (KeyError, ValueError, TypeError) as exc:
        raise _config_error(str(exc)) from None
    for p in cfg["p_grid"]:
        if not 0 <= p <= 1:
            raise _config_error("every p must lie in [0,1]")
    if cfg["count"] < 0 or cfg["seed"] < 0:
        raise _config_error("count and seed must be nonnegative")
    return cfg


def _config_echo(cfg: dict) -> dict:
    echo = {
        "kind": cfg["kind"],
        "count": cfg["count"],
        "p": [format_fraction(p) for p in cfg["p_grid"]],
        "eps": [format_fraction(e) for e in cfg["eps_grid"]],
        "t": cfg["t_grid"],
        "c_scale": format_fraction(cfg["c_scale"]),
        "seed": cfg["seed"],
    }
    if cfg["kind"] == "gnp":
        echo["n"] = cfg["n"]
    else:
        echo["a"] = cfg["a"]
        echo["b"] = cfg["b"]
    if cfg["attempts"] is not None:
        echo["attempts"] = cfg["attempts"]
    return echo


def _run_instance(cfg: dict, p: Fraction, eps: Fraction, t: int,
                  ci: int, ii: int) -> dict:
    seed_graph = derive_seed(cfg["seed"], ci, ii, 0)
    seed_build = derive_seed(cfg["seed"], ci, ii, 1)
    if cfg["kind"] == "gnp":
        g = random_graph(cfg["n"], p, Rng(seed_graph))
    else:
        g = random_bipartite(cfg["a"], cfg["b"], p, Rng(seed_graph))
    record: dict = {
        "cell": ci,
        "instance": ii,
        "p": format_fraction(p),
        "eps": format_fraction(eps),
        "t": t,
        "seed_graph": seed_graph,
        "seed_build": seed_build,
        "avg_degree": format_fraction(average_degree(g)),
    }
    kwargs = {}
    if cfg["attempts"] is not None:
        kwargs["max_attempts"] = cfg["attempts"]
    started = time.perf_counter_ns()
    try:
        if cfg["kind"] == "gnp":
            model = build_dense_minor(
                g, eps, t, cfg["c_scale"], Rng(seed_build), **kwargs
            )
        else:
            model = build_dense_minor_bipartite(
                g, range(cfg["a"]), range(cfg["a"], g.n), eps, t,
                cfg["c_scale"], Rng(seed_build), **kwargs
            )
        report = validate_model(model)
        ok = report.valid and is_eps_t_dense(report.pattern, eps, t)
        record["success"] = ok
        if ok:
            pattern = report.pattern
            pairs = pattern.n * (pattern.n - 1) // 2
            record["pattern_order"] = pattern.n
            record["nonedges"] = pairs - pattern.m
            record["density"] = format_fraction(Fraction(pattern.m, pairs))
            record["fragments"] = [sorted(f) for f in model.fragments]
        else:
            record["error"] = "certificate re-check failed"
    except MinorforgeError as exc:
        record["success"] = False
        record["error"] = type(exc).__name__
        record["reason"] = str(exc)
    record["wall_ms"] = (time.perf_counter_ns() - started) // 1_000_000
    return record


def _cmd_experiment(args) -> int:
    cfg = _load_config(args.config)
    cells = [
        (p, eps, t)
        for p in cfg["p_grid"]
        for eps in cfg["eps_grid"]
        for t in cfg["t_grid"]
    ]
    records = []
    cell_rows = []
    for ci, (p, eps, t) in enumerate(cells):
        cell_records = [
            _run_instance(cfg, p, eps, t, ci, ii)
            for ii in range(cfg["count"])
        ]
        records.extend(cell_records)
        successes = sum(1 for r in cell_records if r["success"])
        degrees = [Fraction(r["avg_degree"]) for r in cell_records]
        mean_deg = (
            sum(degrees) / len(degrees) if degrees else Fraction(0)
        )
        scale = t * sqrt_log_inv(eps)
        cell_rows.append(
            {
                "cell": ci,
                "p": format_fraction(p),
                "eps": format_fraction(eps),
                "t": t,
                "count": len(cell_records),
                "successes": successes,
                "rate": (
                    successes / len(cell_records) if cell_records else 0.0
                ),
                "mean_avg_degree": float(mean_deg),
                "degree_multiple": float(mean_deg) / scale if scale else 0.0,
            }
        )
    aggregates = {
        "cells": cell_rows,
        "total": len(records),
        "total_successes": sum(1 for r in records if r["success"]),
    }
    report = make_report(_config_echo(cfg), records, aggregates)
    text = dump_report(report)
    out = args.out if args.out is not None else cfg.get("out")
    if out is None:
        sys.stdout.write(text)
    else:
        _emit(text, out)
        stem, _ = os.path.splitext(out)
        with open(stem + ".csv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(
                fh,
                fieldnames=[
                    "cell", "p", "eps", "t", "count", "successes",
                    "rate", "mean_avg_degree", "degree_multiple",
                ],
            )
            writer.writeheader()
            writer.writerows(cell_rows)
    return 0


def _cmd_export_dot(args) -> int:
    g, _ = parse_graph(_read(args.graph))
    model = None
    if args.model is not None:
        model = parse_model(_read(args.model), g)
    _emit(to_dot(g, model), args.out)
    return 0


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minorforge",
        description="constructive graph-minor toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a graph file")
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--p", type=_rational, default=None)
    gen.add_argument("--seed", type=_seed, default=0)
    gen.add_argument("--complete", type=int, default=None)
    gen.add_argument("--bipartite", type=int, nargs=2, default=None,
                     metavar=("A", "B"))
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_gen)

    ext = sub.add_parser("extract", help="run a minor extraction")
    ext.add_argument(
        "mode",
        choices=[
            "mader", "dense-connected", "dense-minor",
            "dense-minor-bipartite", "kconn",
        ],
    )
    ext.add_argument("graph")
    ext.add_argument("--d", type=int, default=None)
    ext.add_argument("--k", type=int, default=None)
    ext.add_argument("--eps", type=_rational, default=None)
    ext.add_argument("--t", type=int, default=None)
    ext.add_argument("--c-scale", type=_rational, default=None,
                     dest="c_scale")
    ext.add_argument("--attempts", type=int, default=None)
    ext.add_argument("--seed", type=_seed, default=0)
    ext.add_argument("--out", default=None)
    ext.add_argument("--format", choices=["text", "json"], default="text")
    ext.set_defaults(func=_cmd_extract)

    ver = sub.add_parser("verify", help="re-validate a model file")
    ver.add_argument("graph")
    ver.add_argument("model")
    ver.add_argument("--eps", type=_rational, required=True)
    ver.add_argument("--t", type=int, required=True)
    ver.add_argument("--format", choices=["text", "json"], default="text")
    ver.set_defaults(func=_cmd_verify)

    pth = sub.add_parser("paths", help="disjoint paths and separations")
    pth.add_argument("graph")
    pth.add_argument("--s", type=_vertex_list, default=None)
    pth.add_argument("--t", type=_vertex_list, default=None)
    pth.add_argument("--k", type=int, default=None)
    pth.add_argument("--pairs", type=_pair_list, default=None)
    pth.add_argument("--out", default=None)
    pth.add_argument("--format", choices=["text", "json"], default="text")
    pth.set_defaults(func=_cmd_paths)

    exp = sub.add_parser("experiment", help="seeded grid sweep")
    exp.add_argument("config")
    exp.add_argument("--out", default=None)
    exp.set_defaults(func=_cmd_experiment)

    dot = sub.add_parser("export-dot", help="graph (and model) as DOT")
    dot.add_argument("graph")
    dot.add_argument("--model", default=None)
    dot.add_argument("--out", default=None)
    dot.set_defaults(func=_cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        OrderTooSmallError,
        UnknownVertexError,
        NotAnEdgeError,
        InvalidBipartitionError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MinorforgeError as exc:
        print(
            f"construction failed: {type(exc).__name__}: {exc}",
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
