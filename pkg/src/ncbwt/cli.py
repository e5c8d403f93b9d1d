"""Command-line front end: closed-form sweeps, Monte-Carlo runs, and
round-by-round scenario traces.

Defaults mirror the reference experiment: a 512 kB resource (1 kB = 1000
bytes), block sizes 256/512/1024, total loss probability 0 to 0.9 in steps of
0.05, and forward loss shares 0.3, 0.7, and 1.
"""

import argparse
import random
import sys
from importlib import resources

from .channel import ScriptedChannel, TraceExhausted, load_trace, parse_trace
from .sim import ExperimentConfig, default_p_grid, run_random_transfer, \
    rows_to_csv, sweep


def _parse_p_range(text: str):
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ValueError("--p-range must be LO:HI:STEP, got %r" % (text,))
    if step <= 0 or hi < lo:
        raise ValueError("bad --p-range bounds: %r" % (text,))
    return default_p_grid(lo, hi, step)


def _grid_args(parser):
    parser.add_argument("--resource-bytes", type=int, default=512_000,
                        help="resource size R in bytes (default 512000)")
    parser.add_argument("--block-bytes", type=int, action="append",
                        help="block size B, repeatable (default 256 512 1024)")
    parser.add_argument("--p", type=float, action="append", dest="p_values",
                        help="total round loss probability, repeatable")
    parser.add_argument("--p-range", type=str, default=None,
                        help="loss grid LO:HI:STEP (default 0:0.9:0.05)")
    parser.add_argument("--alpha", type=float, action="append",
                        help="forward loss share, repeatable (default 0.3 0.7 1)")
    parser.add_argument("--protocol", choices=("bwt", "nc", "both"),
                        default="both")
    parser.add_argument("--out", type=str, default=None,
                        help="write CSV to this file instead of stdout")


def _build_config(args, trials: int, seed: int) -> ExperimentConfig:
    if args.p_values:
        p_values = tuple(args.p_values)
    elif args.p_range:
        p_values = _parse_p_range(args.p_range)
    else:
        p_values = default_p_grid()
    for p in p_values:
        if not 0.0 <= p <= 0.9:
            raise ValueError("p must be in [0, 0.9], got %g" % p)
    alphas = tuple(args.alpha) if args.alpha else (0.3, 0.7, 1.0)
    for a in alphas:
        if not 0.0 < a <= 1.0:
            raise ValueError("alpha must be in (0, 1], got %g" % a)
    return ExperimentConfig(
        resource_bytes=args.resource_bytes,
        block_bytes=tuple(args.block_bytes) if args.block_bytes
        else (256, 512, 1024),
        p_values=p_values,
        alphas=alphas,
        trials=trials,
        seed=seed,
        protocol=args.protocol,
    )


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    config = _build_config(args, trials=0, seed=0)
    _emit(rows_to_csv(sweep(config)), args.out)
    return 0


def cmd_simulate(args) -> int:
    if args.trials < 0:
        raise ValueError("--trials must be >= 0")
    config = _build_config(args, trials=args.trials, seed=args.seed)
    _emit(rows_to_csv(sweep(config)), args.out)
    return 0


def bundled_trace_path():
    return resources.files("ncbwt").joinpath("data/fig1a.trace")


def cmd_trace(args) -> int:
    if args.trace_file:
        outcomes = load_trace(args.trace_file)
    else:
        with bundled_trace_path().open("r", encoding="utf-8") as fh:
            outcomes = parse_trace(fh.read())
    if not outcomes:
        raise ValueError("trace file is empty")
    channel = ScriptedChannel(outcomes)
    rng = random.Random(args.seed)
    transcript = []
    result = run_random_transfer(args.protocol, args.blocks, channel, rng,
                                 transcript=transcript)
    for line in transcript:
        print(line)
    print("transfer complete: %d transmissions, %d additional, %d rounds"
          % (result.tx_total, result.additional, result.rounds))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncbwt",
        description="Coded block-wise transfer: analytics, simulation, traces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", help="closed-form sweep of expected additional blocks")
    _grid_args(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_sim = sub.add_parser(
        "simulate", help="Monte-Carlo sweep alongside the closed forms")
    _grid_args(p_sim)
    p_sim.add_argument("--trials", type=int, default=100,
                       help="trials per grid point; 0 = analytic only")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.set_defaults(func=cmd_simulate)

    p_trace = sub.add_parser(
        "trace", help="replay a scripted loss trace round by round")
    p_trace.add_argument("--trace-file", type=str, default=None,
                         help="loss trace file (default: bundled scenario)")
    p_trace.add_argument("--protocol", choices=("bwt", "nc"), default="nc")
    p_trace.add_argument("--blocks", type=int, default=5,
                         help="resource block count (default 5)")
    p_trace.add_argument("--seed", type=int, default=0)
    p_trace.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, TraceExhausted) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
