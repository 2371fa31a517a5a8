"""Command line driver: ``pclab <subcommand> [flags]``.

Every subcommand prints one JSON document on stdout (``--csv`` flattens it
to a two-line table instead). Exit codes: 0 success, 2 usage error,
3 resource budget exceeded, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .closure import closure_with_witness
from .encodings import encode_cnf, encode_polynomials
from .errors import DomainError, InvariantViolation, PclabError, PreconditionError, ResourceError
from .field import Field
from .graphs import Graph, VertexOrder, check_sparsity, sample_gnp, sample_regular

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _graph(args) -> Graph:
    if not args.graph:
        raise UsageError("--graph is required")
    return Graph.read(args.graph)


def _field(args) -> Field:
    return Field.parse(args.field)


def _vertex_list(text: str | None) -> list:
    if not text:
        return []
    return [int(t) for t in text.replace(",", " ").split()]


def cmd_sample(args) -> dict:
    if args.seed is None:
        raise UsageError("sample needs --seed")
    if args.model == "gnp":
        p = 0.0 if args.n <= 1 else min(1.0, args.d / args.n)
        G = sample_gnp(args.n, p, args.seed)
    else:
        G = sample_regular(args.n, int(args.d), args.seed)
    if args.out:
        G.write(args.out)
    return {"model": args.model, "n": G.n, "m": G.m, "max_degree": G.max_degree(), "seed": args.seed, "out": args.out}


def cmd_encode(args) -> dict | str:
    G = _graph(args)
    if args.format == "dimacs":
        text = encode_cnf(G, args.k).to_dimacs()
        if args.out:
            Path(args.out).write_text(text)
            return {"format": "dimacs", "out": args.out, "header": text.splitlines()[0]}
        return text
    inst = encode_polynomials(G, args.k, _field(args))
    data = inst.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, sort_keys=True))
        return {"format": "json", "out": args.out, "axioms": sum(len(v) for v in data["axioms"].values())}
    return data


def cmd_sparsity(args) -> dict:
    G = _graph(args)
    rep = check_sparsity(G, args.ell, Fraction(args.eps), mode=args.mode, budget=args.budget)
    return rep.to_json()


def cmd_closure(args) -> dict:
    G = _graph(args)
    order = VertexOrder.read(args.order) if args.order else VertexOrder.identity(G.n)
    trace = closure_with_witness(G, order, _vertex_list(args.set))
    out = trace.to_json()
    out["size"] = len(trace.closure)
    return out


def cmd_tdelta(args) -> dict:
    from .framework import build_context

    G = _graph(args)
    ctx = build_context(G, args.k, _field(args), args.delta)
    if args.out:
        ctx.vertex_order.write(args.out)
    return {
        "delta": args.delta,
        "T": sorted(ctx.T),
        "c": ctx.c,
        "c_exact": ctx.c_exact,
        "order": list(ctx.vertex_order.sequence),
        "colouring": {str(v): c for v, c in sorted(ctx.colouring.items())},
    }


def cmd_mindegree(args) -> dict:
    from .pcdegree import min_refutation_degree

    G = _graph(args)
    F = _field(args)
    inst = encode_polynomials(G, args.k, F)
    d = min_refutation_degree(inst.axioms, F, args.dmax, budget=args.budget)
    return {"k": args.k, "field": repr(F), "dmax": args.dmax, "budget": args.budget, "min_degree": "none" if d is None else d}


def cmd_verify(args) -> dict:
    from .framework import run_pipeline

    if args.seed is None:
        raise UsageError("verify needs --seed")
    G = _graph(args)
    rep = run_pipeline(G, args.k, _field(args), args.delta, args.degree, args.samples, args.seed, dmax=args.dmax, budget=args.budget)
    return rep.to_json()


def cmd_resgame(args) -> dict:
    from .resgame import play

    if args.seed is None:
        raise UsageError("resgame needs --seed")
    G = _graph(args)
    out = play(G, args.k, args.w, args.prover, args.rounds, args.seed, transcript=bool(args.out))
    if args.out:
        Path(args.out).write_text(out.transcript_lines())
    res = out.to_json()
    res.update({"k": args.k, "w": args.w, "prover": args.prover, "seed": args.seed})
    return res


def flatten(obj, prefix="") -> dict:
    """Nested dicts become dotted column names; lists stay JSON strings."""
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(flatten(v, f"{prefix}{k}."))
        return out
    key = prefix[:-1] or "value"
    out[key] = json.dumps(obj) if isinstance(obj, list) else obj
    return out


def _emit(result, as_csv: bool):
    if isinstance(result, str):
        sys.stdout.write(result)
        return
    if as_csv:
        row = flatten(result)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(row))
        w.writeheader()
        w.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(result, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file ('n m' header, one edge per line)")
    common.add_argument("--k", type=int, default=3, help="number of colours (default 3)")
    common.add_argument("--field", default="2", help="2, another prime p, or q (default 2)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--csv", action="store_true", help="flatten the JSON result to CSV")

    ap = argparse.ArgumentParser(prog="pclab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="sample a random graph")
    p.add_argument("--model", choices=("gnp", "regular"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=float, required=True, help="average degree (gnp) or degree (regular)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("encode", parents=[common], help="colouring axioms as DIMACS or JSON")
    p.add_argument("--format", choices=("dimacs", "json"), default="dimacs")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("sparsity", parents=[common], help="check (ell, eps)-sparsity")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--eps", required=True, help="rational, e.g. 1/18")
    p.add_argument("--mode", choices=("auto", "exhaustive", "connected"), default="auto")
    p.add_argument("--budget", type=int, default=20_000_000)
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser("closure", parents=[common], help="closure of a vertex set with its witness trace")
    p.add_argument("--set", default="", help="comma separated vertices")
    p.add_argument("--order", default=None, help="vertex order file (default: by id)")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("tdelta", parents=[common], help="high-degree set, residual colouring and vertex order")
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_tdelta)

    p = sub.add_parser("mindegree", parents=[common], help="smallest refutation degree up to --dmax")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--budget", type=int, default=2_000_000, help="monomial budget")
    p.set_defaults(func=cmd_mindegree)

    p = sub.add_parser("verify", parents=[common], help="run the lower-bound pipeline")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--budget", type=int, default=2_000_000, help="monomial budget of the cross-check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resgame", parents=[common], help="play the width game")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--prover", choices=("random", "greedy-conflict"), default="greedy-conflict")
    p.add_argument("--rounds", type=int, default=10_000)
    p.set_defaults(func=cmd_resgame)
    return ap


def _error(kind: str, exc: Exception, extra: dict | None = None):
    obj = {"error": kind, "message": str(exc)}
    if extra:
        obj.update(extra)
    sys.stdout.write(json.dumps(obj, sort_keys=True, default=str) + "\n")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _emit(args.func(args), args.csv)
        return EXIT_OK
    except (UsageError, DomainError, PreconditionError, FileNotFoundError, ValueError) as exc:
        extra = {"witness": exc.witness} if isinstance(exc, PreconditionError) else None
        _error("usage", exc, extra)
        return EXIT_USAGE
    except ResourceError as exc:
        _error("resource", exc, {"bound": exc.bound})
        return EXIT_RESOURCE
    except (InvariantViolation, PclabError) as exc:
        _error("invariant", exc)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
