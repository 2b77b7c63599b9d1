"""Command line: ``dyntc generate | run | verify | shuffle``.

Exit codes: 0 success, 1 divergence or replay defect, 2 configuration
error, 3 timeout.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from collections.abc import Sequence

from dyntc.bench import DYNAMIC, STATIC, AlgoChoice, emit_csv, run_benchmark, verify_run
from dyntc.instances import (
    ConfigError,
    InstanceFormatError,
    ReplayError,
    generate_er,
    parse_mix,
    read_instance,
    save_instance,
    shuffle_updates,
)
from dyntc.traversal import QUERIES

log = logging.getLogger("dyntc")

EXIT_OK, EXIT_DIVERGENCE, EXIT_CONFIG, EXIT_TIMEOUT = 0, 1, 2, 3


def _period(text: str) -> int | None:
    if text.lower() in ("inf", "infinity", "none"):
        return None
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("period must be a positive integer or 'inf'")
    return value


def _add_algo_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", required=True, help="instance file (optionally gzipped)")
    p.add_argument("--algo", required=True, choices=STATIC + DYNAMIC)
    p.add_argument("--k", type=int, default=1, help="supportive vertex count (sv, sva)")
    p.add_argument("--c", type=_period, default=None, help="adjustment period or 'inf' (sva, svc)")
    p.add_argument("--z", type=int, default=None, help="minimum SCC size (svc); default 25, or 50 for n >= 1e6")
    p.add_argument("--ssr", choices=("si", "ses"), default="ses")
    p.add_argument("--ratio", type=float, default=0.25)
    p.add_argument("--beta", type=int, default=5)
    p.add_argument("--fallback", choices=tuple(QUERIES), default="bibfs")
    p.add_argument("--seed", type=int, default=0)


def _choice(args: argparse.Namespace) -> AlgoChoice:
    return AlgoChoice(
        args.algo,
        k=args.k,
        c=args.c,
        z=args.z,
        ssr=args.ssr,
        ratio=args.ratio,
        beta=args.beta,
        fallback=args.fallback,
        seed=args.seed,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyntc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a random dynamic instance")
    gen.add_argument("--model", choices=("er",), default="er")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--density", type=float, required=True)
    gen.add_argument("--ops", type=int, required=True)
    gen.add_argument("--mix", default="33:33:34", help="insert:delete:query percentages")
    gen.add_argument("--batch", type=int, default=10)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    run = sub.add_parser("run", help="time one algorithm on an instance")
    _add_algo_flags(run)
    run.add_argument("--timeout", type=float, default=None, help="seconds")
    run.add_argument("--csv", default=None, help="append results here (default: stdout)")
    run.add_argument("--trace", default=None, help="write per-operation timings to this file")

    ver = sub.add_parser("verify", help="check an algorithm against the BFS oracle")
    _add_algo_flags(ver)

    shuf = sub.add_parser("shuffle", help="randomly permute an instance's updates")
    shuf.add_argument("--instance", required=True)
    shuf.add_argument("--seed", type=int, default=0)
    shuf.add_argument("--out", required=True)
    return parser


def _cmd_generate(args: argparse.Namespace) -> int:
    inst = generate_er(args.n, args.density, args.ops, parse_mix(args.mix), args.batch, args.seed)
    save_instance(inst, args.out)
    log.info("wrote %s: n=%d m=%d ops=%d", args.out, inst.n, len(inst.initial_edges), len(inst.ops))
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    choice = _choice(args)
    inst = read_instance(args.instance)
    if not inst.name:
        inst.meta["name"] = args.instance
    trace = open(args.trace, "w", encoding="utf-8") if args.trace else None
    try:
        metrics = run_benchmark(inst, choice, timeout=args.timeout, trace=trace)
    finally:
        if trace is not None:
            trace.close()
    if args.csv:
        fresh = not os.path.exists(args.csv) or os.path.getsize(args.csv) == 0
        with open(args.csv, "a", encoding="utf-8", newline="") as fh:
            emit_csv([metrics], fh, header=fresh)
    else:
        emit_csv([metrics], sys.stdout)
    return EXIT_TIMEOUT if metrics.timed_out else EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    choice = _choice(args)
    report = verify_run(read_instance(args.instance), choice)
    print(report)
    return EXIT_OK if report.ok else EXIT_DIVERGENCE


def _cmd_shuffle(args: argparse.Namespace) -> int:
    shuffled, repairs = shuffle_updates(read_instance(args.instance), args.seed)
    save_instance(shuffled, args.out)
    print(f"wrote {args.out} ({repairs} delete/insert repairs)")
    return EXIT_OK


COMMANDS = {
    "generate": _cmd_generate,
    "run": _cmd_run,
    "verify": _cmd_verify,
    "shuffle": _cmd_shuffle,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ReplayError, InstanceFormatError) as exc:
        print(f"instance error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
