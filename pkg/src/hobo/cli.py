"""Command-line entry point: ``hobo <command> ...``.

Results go to stdout, diagnostics to stderr.  Exit status is 0 on success,
2 on bad input or usage, 1 on internal errors.  Bitstrings are read and
printed left to right as ``x0 x1 ... x_{n-1}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from hobo import annealer, compressor, oracle, polynomial, tensor
from hobo.evaluator import contract
from hobo.polynomial import HoboError


def _fmt(v: float) -> str:
    if float(v).is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def _bits(a) -> str:
    return "".join(str(int(b)) for b in a)


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def cmd_solve(args) -> int:
    p = polynomial.load(args.file)
    cfg = annealer.AnnealConfig(
        sweeps=args.sweeps,
        restarts=args.restarts,
        t_initial=args.t0,
        t_final=args.t_end,
        seed=args.seed,
    )
    res = annealer.anneal(p, cfg, workers=args.threads)
    if args.json:
        sys.stdout.write(_dump(res.to_json()))
    else:
        sys.stdout.write(f"cost {_fmt(res.best_cost)}\nassignment {_bits(res.best_assignment)}\n")
    return 0


def cmd_eval(args) -> int:
    p = polynomial.load(args.file)
    s = args.assign
    if len(s) != p.num_vars or set(s) - {"0", "1"}:
        raise HoboError(f"--assign needs {p.num_vars} characters from {{0,1}}, got {s!r}")
    x = [int(c) for c in s]
    if args.method == "tensor":
        cost = contract(tensor.build_hobo_tensor(p), x) + p.offset
    else:
        cost = polynomial.evaluate(p, x)
    sys.stdout.write(_fmt(cost) + "\n")
    return 0


def cmd_build_tensor(args) -> int:
    p = polynomial.load(args.file)
    t = tensor.build_hobo_tensor(p, args.order)
    _write(_dump(tensor.tensor_to_json(t)), args.out)
    return 0


def cmd_compress(args) -> int:
    p = polynomial.load(args.file)
    t = tensor.build_hobo_tensor(p, args.order or max(p.degree, 2))
    f = compressor.tensor_svd(t)
    rank = f.rank if args.rank is None else args.rank
    report = compressor.compression_report(t, rank)
    if args.factors_out:
        _write(_dump(compressor.factors_to_json(compressor.truncate(f, rank))), args.factors_out)
    sys.stdout.write(_dump(report))
    return 0


def cmd_brute(args) -> int:
    p = polynomial.load(args.file)
    x, cost = oracle.brute_force_min(p)
    if args.json:
        sys.stdout.write(_dump({"assignment": list(x), "cost": cost}))
    else:
        sys.stdout.write(f"min {_fmt(cost)} at {_bits(x)}\n")
    return 0


def cmd_gen(args) -> int:
    p = polynomial.random_instance(
        args.n, args.degree, args.terms, (args.coef_min, args.coef_max),
        seed=args.seed, integer=args.integer,
    )
    if args.out and args.out.endswith(".json"):
        text = _dump(polynomial.to_json(p))
    else:
        text = polynomial.format_text(p)
    _write(text, args.out)
    return 0


def graph_dot(n: int, order: int) -> str:
    """Tensor-network view: one coefficient node with one arm per copy of ``x``."""
    name = {1: "c", 2: "Q"}.get(order, "H")
    dims = "x".join([str(n)] * order)
    lines = [
        "graph hobo {",
        f'  {name} [shape=box, label="{name} ({dims})"];',
    ]
    for a in range(1, order + 1):
        lines.append(f'  x{a} [shape=circle, label="x ({n})"];')
    for a in range(1, order + 1):
        lines.append(f'  {name} -- x{a} [label="arm {a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_graph(args) -> int:
    p = polynomial.load(args.file)
    order = args.order or max(p.degree, 1)
    if order < p.degree:
        raise HoboError(f"order {order} is below polynomial degree {p.degree}")
    _write(graph_dot(p.num_vars, order), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hobo",
        description="Higher-order binary optimization via coefficient tensors. "
        "Bitstrings map character i to variable x_i.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="minimize by simulated annealing")
    s.add_argument("file")
    s.add_argument("--sweeps", type=int, default=1000)
    s.add_argument("--restarts", type=int, default=8)
    s.add_argument("--t0", type=float, default=None, help="initial temperature (default: auto)")
    s.add_argument("--t-end", type=float, default=1e-3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=1, help="restart workers; output is unaffected")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("eval", help="cost of one assignment")
    s.add_argument("file")
    s.add_argument("--assign", required=True, help="bitstring, character i is x_i")
    s.add_argument("--method", choices=["sparse", "tensor"], default="sparse")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("build-tensor", help="write the dense coefficient tensor as JSON")
    s.add_argument("file")
    s.add_argument("--order", type=int, default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_build_tensor)

    s = sub.add_parser("compress", help="SVD-truncate the tensor and report the error")
    s.add_argument("file")
    s.add_argument("--rank", type=int, default=None, help="default: full rank")
    s.add_argument("--order", type=int, default=None)
    s.add_argument("--factors-out", default=None)
    s.set_defaults(func=cmd_compress)

    s = sub.add_parser("brute", help="exhaustive minimum (n <= 24)")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_brute)

    s = sub.add_parser("gen", help="random instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--terms", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--coef-min", type=float, default=-10.0)
    s.add_argument("--coef-max", type=float, default=10.0)
    s.add_argument("--integer", action="store_true", help="integer coefficients")
    s.add_argument("--out", default=None, help=".json for JSON, otherwise .hobo text")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("graph", help="tensor-network view as Graphviz DOT")
    s.add_argument("file")
    s.add_argument("--order", type=int, default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_graph)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HoboError, OSError) as exc:
        print(f"hobo {args.command}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"hobo {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
