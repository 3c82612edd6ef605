"""Command-line front end: ``bnt <subcommand> [options]``.

JSON goes to stdout (or ``--output``) with sorted keys and floats rounded
to 12 significant digits, so identical inputs give byte-identical output.
Node ids in JSON are always 0-based; ``--one-based`` only changes how node
ids are read from flags/graph files and shown in ``--format table``.

Exit codes: 0 success, 1 domain error (JSON error object on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Any, Sequence

from . import __version__
from .errors import BNTError

NODE_KEYS = {"sep", "id", "dis", "cover", "sets", "removed", "node", "remap"}


class UsageError(Exception):
    pass


def _round_floats(obj: Any) -> Any:
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return None
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return _round_floats(obj.item())
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(_round_floats(obj), sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def _shift(value: Any, by: int) -> Any:
    if isinstance(value, int) and not isinstance(value, bool):
        return value + by
    if isinstance(value, list):
        return [_shift(v, by) for v in value]
    return value


def render_table(obj: dict, one_based: bool) -> str:
    lines = []

    def walk(prefix: str, value: Any) -> None:
        key = prefix.rsplit(".", 1)[-1]
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}.{k}" if prefix else k, value[k])
            return
        if isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                walk(f"{prefix}[{i}]", item)
            return
        if one_based and key in NODE_KEYS:
            value = _shift(value, 1)
        if isinstance(value, float):
            value = f"{value:.6g}"
        elif isinstance(value, list):
            value = " ".join(str(v) for v in value) if value and not isinstance(value[0], list) else json.dumps(value)
        lines.append(f"{prefix:<28} {value}")

    walk("", _round_floats(obj))
    return "\n".join(lines) + "\n"


# -- input helpers -----------------------------------------------------------

def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_matrix(args):
    from .pathmatrix import read_matrix

    return read_matrix(
        _read_text(args.matrix),
        allow_empty_paths=args.allow_empty_paths,
        allow_duplicate_columns=args.allow_duplicate_columns,
    )


def _node_list(text: str, args) -> list[int]:
    off = 1 if args.one_based else 0
    try:
        return [int(x) - off for x in text.replace(" ", ",").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _node(value: int, args) -> int:
    return value - (1 if args.one_based else 0)


# -- subcommands -------------------------------------------------------------

def cmd_analyze(args) -> dict:
    from .oracle import mu_sigma_delta, report

    P = _load_matrix(args)
    rep = report(P, args.k, args.budget)
    th = mu_sigma_delta(P, args.k_max, args.budget)
    out = rep.to_dict()
    out.update(th.to_dict())
    return out


def cmd_localize(args) -> dict:
    from .oracle import localize
    from .pathmatrix import read_measurement

    P = _load_matrix(args)
    text = args.measurement
    if os.path.exists(text):
        text = _read_text(text)
    M = read_measurement(text, P.m)
    sets = localize(P, M, args.k, args.budget)
    return {"k": args.k, "sets": [list(W) for W in sets], "unique": len(sets) == 1}


def cmd_sep(args) -> dict:
    from .transversal import decr_sep, mns_witness, simple_sep

    P = _load_matrix(args)
    u = _node(args.node, args)
    if not 0 <= u < P.n:
        raise UsageError(f"node {args.node} out of range")
    if args.algo == "simple":
        order = _node_list(args.order, args) if args.order else None
        w = simple_sep(P, u, order)
    elif args.algo == "decr":
        w = decr_sep(P, u, args.direction)
    else:
        w = mns_witness(P, u, args.budget)
    return {
        "node": u,
        "algo": args.algo,
        "cover": list(w.cover) if w else [],
        "k_not_sep": w.size if w else None,
    }


def cmd_mns(args) -> dict:
    from .transversal import mns_witness

    P = _load_matrix(args)
    u = _node(args.node, args)
    if not 0 <= u < P.n:
        raise UsageError(f"node {args.node} out of range")
    w = mns_witness(P, u, args.budget)
    return {"node": u, "k": w.size if w else None, "cover": list(w.cover) if w else []}


def cmd_bound(args) -> dict:
    from .counting import BoundParams, all_bounds

    params = BoundParams(C=args.C, epsilon=args.eps, m0=args.m0)
    return all_bounds(args.n, args.m, args.k, params)


def cmd_estimate(args) -> dict:
    from .random_model import chi, chi2, montecarlo_estimate

    P = _load_matrix(args)
    if args.mode == "exact":
        rep = chi(P, args.k, args.budget)
    elif args.mode == "chi2":
        rep = chi2(P, args.k)
    else:
        if args.seed is None:
            raise UsageError("--mode mc needs --seed")
        rep = montecarlo_estimate(P, args.k, args.trials, args.seed, args.threads)
    return rep.to_dict()


def _parse_lambda(text: str, n: int) -> list[float]:
    if os.path.exists(text):
        text = _read_text(text)
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad --lambda value {text!r}") from None
    if len(values) == 1:
        return values * n
    return values


def cmd_sample(args):
    from .pathmatrix import write_matrix
    from .random_model import sample

    lam = _parse_lambda(args.lam, args.n)
    P, redraws = sample(args.n, args.m, lam, args.seed, args.retry_cap)
    text = write_matrix(P)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return {"m": P.m, "n": P.n, "redraws": redraws, "seed": args.seed, "out": args.out}
    return text


def cmd_paths(args) -> dict:
    from .graphio import MonitorSpec, enumerate_paths, read_graph
    from .pathmatrix import write_matrix

    G = read_graph(_read_text(args.graph), one_based=args.one_based)
    mon = MonitorSpec(tuple(_node_list(args.sources, args)), tuple(_node_list(args.targets, args)))
    for v in mon.sources + mon.targets:
        if not 0 <= v < G.n:
            raise UsageError(f"monitor vertex out of range: {v}")
    res = enumerate_paths(G, mon, args.cutoff, args.max_paths)
    text = write_matrix(res.matrix)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    out = res.to_dict()
    out["rows"] = text.splitlines()
    return out


def cmd_ubdis(args) -> dict:
    from .dis_bounds import builtin_strategies, lb_dis
    from .graphio import read_graph

    P = _load_matrix(args)
    G = read_graph(_read_text(args.graph), one_based=args.one_based)
    remap = None
    if args.remap:
        data = json.loads(_read_text(args.remap))
        remap = data["remap"] if isinstance(data, dict) else data
    choice = args.strategy
    if choice == "neighbours":
        kind, d = "neighbours", None
    elif choice == "shortest":
        kind, d = "shortest_paths", None
    elif choice.startswith("dist:"):
        kind = "distance"
        try:
            d = int(choice[5:])
        except ValueError:
            raise UsageError(f"bad distance in {choice!r}") from None
    else:
        raise UsageError(f"unknown strategy {choice!r}")
    strat = builtin_strategies(G, P, kind, d=d, selector=args.selector, remap=remap)
    out = lb_dis(P, args.k, strat).to_dict()
    out["strategy"] = choice
    out["selector"] = strat.config.selector
    return out


# -- parser ------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--one-based", action="store_true", help="read/display node ids 1-based (JSON stays 0-based)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--budget", type=_positive, default=None, help="max candidate sets (default: $BNT_BUDGET or 1e8)")

    mat = argparse.ArgumentParser(add_help=False)
    mat.add_argument("--matrix", required=True, help="comma-separated 0/1 matrix file")
    mat.add_argument("--allow-empty-paths", action="store_true")
    mat.add_argument("--allow-duplicate-columns", action="store_true")

    parser = argparse.ArgumentParser(prog="bnt", description="Boolean network tomography toolkit")
    parser.add_argument("--version", action="version", version=f"bnt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, mat], help="exact SEP/ID/DIS sets and mu, sigma, delta")
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--k-max", type=_positive, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("localize", parents=[common, mat], help="failure sets consistent with a measurement")
    p.add_argument("--measurement", required=True, help="comma-separated 0/1 outcomes or a file")
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("sep", parents=[common, mat], help="cover witnessing non-separability of a node")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--algo", choices=("simple", "decr", "exact"), default="simple")
    p.add_argument("--order", help="node permutation for the simple sweep")
    p.add_argument("--direction", choices=("largest_first", "smallest_first"), default="largest_first")
    p.set_defaults(func=cmd_sep)

    p = sub.add_parser("mns", parents=[common, mat], help="least k at which a node stops being k-separable")
    p.add_argument("--node", type=int, required=True)
    p.set_defaults(func=cmd_mns)

    p = sub.add_parser("bound", parents=[common], help="counting bounds on mu and |ID_k|")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--m0", type=_positive, default=1)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("estimate", parents=[common, mat], help="estimate |SEP_k| from the binomial model")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--mode", choices=("exact", "chi2", "mc"), default="exact")
    p.add_argument("--trials", type=_positive, default=10**4)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sample", parents=[common], help="draw a valid matrix from the binomial model")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="a probability, a list, or a file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--retry-cap", type=_positive, default=1000)
    p.add_argument("--out", help="matrix file to write (default: matrix text on stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("paths", parents=[common], help="measurement paths between monitors of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--sources", required=True)
    p.add_argument("--targets", required=True)
    p.add_argument("--cutoff", type=_positive, default=None)
    p.add_argument("--max-paths", type=_positive, default=10**6)
    p.add_argument("--out", help="matrix file to write")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("ubdis", parents=[common, mat], help="upper bound on |DIS_k| by peeling equal nodes")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--strategy", default="neighbours", help="neighbours | dist:D | shortest")
    p.add_argument("--selector", choices=("full", "shortest-only"), default=None)
    p.add_argument("--remap", help="JSON from `bnt paths` (or a list) mapping columns to graph vertices")
    p.set_defaults(func=cmd_ubdis)
    return parser


def _fail(payload: dict, code: int) -> int:
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        return _fail({"error": "UsageError", "message": str(exc)}, 2)
    except BNTError as exc:
        return _fail(exc.to_dict(), 1)
    except FileNotFoundError as exc:
        return _fail({"error": "FileNotFound", "message": str(exc)}, 1)
    except (ValueError, IndexError) as exc:
        return _fail({"error": type(exc).__name__, "message": str(exc)}, 1)
    if isinstance(result, str):
        text = result
    elif args.format == "table":
        text = render_table(result, args.one_based)
    else:
        text = dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
