"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import DEFAULT_NODES, Budget, BudgetExceeded, SumGame, build_dag, nimber_of
from .gamefile import GameFileError, dag_file, geography_file, kayles_file, load, nim_file, parse, sum_file
from .generate import DEFAULT_CAPS, PAIR_CAPS, SplitMix64, random_dag, random_kayles, random_nim
from .geography import export, max_nimber_sweep
from .primality import is_prime_game
from .reduction import encode_xor, output_size_bound, reduce_to_geography
from .verify import run_verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


PRIME_CHECK_NODES = 5000


def _budget(args, default: int = DEFAULT_NODES) -> Budget:
    # parent-parser actions are shared, so per-command defaults live here
    nodes = default if args.budget_nodes is None else args.budget_nodes
    return Budget(nodes=nodes, seconds=args.budget_seconds)


def _read(path: str):
    if path == "-":
        return parse(sys.stdin.read())
    return load(path)


def _write(path: str, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode()
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _emit_graph(geo, args, d=None) -> None:
    if args.out:
        _write(args.out, geography_file(geo).dumps() if args.format == "json" else export(geo, "dot"))
    if args.dot:
        _write(args.dot, export(geo, "dot"))
    line = f"vertices {len(geo.vertices)} edges {len(geo.edges)}"
    if d is not None and args.mode == "product":
        line += f" bound {output_size_bound(d)}"
    print(line, file=sys.stderr if args.out == "-" else sys.stdout)


def cmd_nimber(args) -> int:
    print(nimber_of(_read(args.input).game(), _budget(args)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    budget = _budget(args)
    d = build_dag(_read(args.input).game(), budget)
    geo = reduce_to_geography(d, args.mode, budget)
    _emit_graph(geo, args, d)
    return EXIT_OK


def cmd_encode_xor(args) -> int:
    budget = _budget(args)
    g1, g2 = _read(args.first).game(), _read(args.second).game()
    geo = encode_xor(g1, g2, args.mode, budget)
    _emit_graph(geo, args, build_dag(SumGame(g1, g2), budget))
    return EXIT_OK


def cmd_sum(args) -> int:
    budget = _budget(args)
    f1, f2 = _read(args.first), _read(args.second)
    a, b = nimber_of(f1.game(), budget), nimber_of(f2.game(), budget)
    total = nimber_of(SumGame(f1.game(), f2.game()), budget)
    print(f"{a} + {b} = {total}")
    if args.out:
        _write(args.out, sum_file(f1, f2).dumps())
    return EXIT_OK


def cmd_verify(args) -> int:
    modes = ("product", "trusted") if args.mode == "both" else (args.mode,)
    base = PAIR_CAPS if args.xor else DEFAULT_CAPS
    caps = dict(base)
    for k in ("piles", "stones", "kayles", "dag"):
        v = getattr(args, f"max_{k}")
        if v is not None:
            caps[k] = v
    report = run_verify(args.count, args.seed, caps, modes, _budget(args), args.timings, args.xor)
    text = report.dumps()
    if args.out:
        _write(args.out, text)
    s = report.summary()
    print(f"instances {s['instances']} passed {s['passed']} failed {s['failed']} max_discrepancy {s['max_discrepancy']}")
    if report.failed:
        target = args.failures_dir or "."
        os.makedirs(target, exist_ok=True)
        for r in report.records:
            if not r["pass"]:
                path = os.path.join(target, f"failure-{args.seed}-{r['index']}.json")
                _write(path, json.dumps(r["game"], indent=1, sort_keys=True) + "\n")
                print(f"failing instance {r['index']} written to {path}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_prime_check(args) -> int:
    verdict = is_prime_game(_read(args.input).game(), _budget(args, PRIME_CHECK_NODES))
    if verdict.kind == "budget-exceeded":
        print(f"budget-exceeded: {verdict.detail}")
        return EXIT_BUDGET
    if verdict.kind == "prime":
        print("prime")
        return EXIT_OK
    a, b = verdict.witness
    print(f"composite: factors of height {a.height} and {b.height} ({len(a)} and {len(b)} tree nodes)")
    if args.out:
        witness = {"left": [list(c) for c in a.children], "right": [list(c) for c in b.children]}
        _write(args.out, json.dumps(witness, indent=1) + "\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = SplitMix64(args.seed)
    meta = {"seed": args.seed}
    if args.ruleset == "nim":
        f = nim_file(random_nim(rng, args.piles, args.max_stones).piles, **meta)
    elif args.ruleset == "kayles":
        f = kayles_file(random_kayles(rng, args.vertices, args.edge_prob), **meta)
    else:
        f = dag_file(random_dag(rng, args.nodes, args.edge_prob), **meta)
    _write(args.out or "-", f.dumps())
    return EXIT_OK


def cmd_sweep(args) -> int:
    modes = ("total", "inout") if args.degree_mode == "both" else (args.degree_mode,)
    status = EXIT_OK
    results = []
    for mode in modes:
        r = max_nimber_sweep(args.max_vertices, args.degree_bound, mode, _budget(args))
        results.append(r.as_dict())
        print(f"{mode}: max nimber {r.max_nimber} over {r.graphs_checked} graphs")
        if args.degree_bound is not None and r.max_nimber > args.degree_bound:
            print(f"{mode}: observed nimber exceeds {args.degree_bound}", file=sys.stderr)
    if args.out:
        _write(args.out, json.dumps(results, indent=1, sort_keys=True) + "\n")
    return status


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _prob(text: str) -> float:
    v = float(text)
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grundygeo", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--budget-nodes",
        type=_nonneg,
        default=None,
        help=f"max distinct positions (default {DEFAULT_NODES}; prime-check {PRIME_CHECK_NODES} tree nodes)",
    )
    common.add_argument("--budget-seconds", type=float, default=None, help="wall-time limit")
    mode = argparse.ArgumentParser(add_help=False)
    mode.add_argument("--mode", choices=("product", "trusted"), default="product")
    graph_out = argparse.ArgumentParser(add_help=False)
    graph_out.add_argument("--out", help="write the Geography game here ('-' for stdout)")
    graph_out.add_argument("--dot", help="also write Graphviz DOT here")
    graph_out.add_argument("--format", choices=("json", "dot"), default="json", help="format for --out")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nimber", parents=[common], help="print the nimber of a game file")
    p.add_argument("input", help="game file ('-' for stdin)")
    p.set_defaults(func=cmd_nimber)

    p = sub.add_parser("reduce", parents=[common, mode, graph_out], help="compile a game to Geography")
    p.add_argument("input")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("encode-xor", parents=[common, mode, graph_out], help="Geography worth the xor of two games")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_encode_xor)

    p = sub.add_parser("sum", parents=[common], help="nimbers of two games and their disjunctive sum")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out", help="write the sum as a game file")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("verify", parents=[common], help="check the compiler on a seeded random corpus")
    p.add_argument("--count", type=_nonneg, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("product", "trusted", "both"), default="both")
    p.add_argument("--xor", action="store_true", help="verify encode-xor on random pairs instead")
    p.add_argument("--max-piles", type=_nonneg)
    p.add_argument("--max-stones", type=_nonneg)
    p.add_argument("--max-kayles", type=_nonneg)
    p.add_argument("--max-dag", type=_nonneg)
    p.add_argument("--timings", action="store_true", help="record wall times (report no longer byte-stable)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--failures-dir", help="directory for replayable failing instances")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prime-check", parents=[common], help="is the game a tree sum of two games?")
    p.add_argument("input")
    p.add_argument("--out", help="write the factor witness here")
    p.set_defaults(func=cmd_prime_check)

    p = sub.add_parser("gen", help="generate a seeded random game file")
    p.add_argument("ruleset", choices=("nim", "kayles", "dag"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--piles", type=_nonneg, default=3)
    p.add_argument("--max-stones", type=_nonneg, default=4)
    p.add_argument("--vertices", type=_nonneg, default=6)
    p.add_argument("--nodes", type=int, default=40)
    p.add_argument("--edge-prob", type=_prob, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", parents=[common], help="max Geography nimber on small bounded-degree digraphs")
    p.add_argument("--max-vertices", type=_nonneg, default=5)
    p.add_argument("--degree-bound", type=_nonneg, default=3)
    p.add_argument("--degree-mode", choices=("total", "inout", "both"), default="total")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "gen":
        if args.edge_prob is None:
            args.edge_prob = 0.4 if args.ruleset == "kayles" else 0.05
        if args.ruleset == "dag" and args.nodes < 1:
            print("error: dag needs at least one node", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except GameFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
