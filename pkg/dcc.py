#!/usr/bin/env python3
"""DCC: dynamic correlation clustering bench. CLI entry point."""

import sys
import os
import threading

# Ensure the repo dir is on the path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import argparse

import bench
import config
import env
import oracle
import state
import streams
import workers
from graph_store import GraphError

# ─── ANSI color codes ───
RST   = "\033[0m"
BOLD  = "\033[1m"
DIM   = "\033[2m"

B4    = "\033[38;5;27m"   # bright blue
B5    = "\033[38;5;33m"   # electric blue
B6    = "\033[38;5;39m"   # sky blue
B7    = "\033[38;5;75m"   # light blue

Y1    = "\033[38;5;220m"  # gold
Y2    = "\033[38;5;226m"  # bright yellow
R1    = "\033[38;5;196m"  # bright red
G1    = "\033[38;5;82m"   # bright green

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

_print_lock = threading.Lock()
_quiet = False


def banner(title):
    if _quiet:
        return
    W = 54
    with _print_lock:
        print(f"\n  {Y1}{'━' * W}{RST}")
        print(f"  {Y1}◆{RST} {BOLD}{Y2}DCC{RST} {B7}{title}{RST}")
        print(f"  {Y1}{'━' * W}{RST}")
        sys.stdout.flush()


def _phase(num, total, label):
    if _quiet:
        return
    bar = f"[{'█' * num}{'░' * (total - num)}]"
    with _print_lock:
        print(f"\n  {Y1}◆{RST} {BOLD}{B6}Step {num}/{total}{RST} {bar} {B7}{label}{RST}")
        print(f"  {DIM}{B4}{'─' * 50}{RST}")
        sys.stdout.flush()


def _status(msg):
    if _quiet:
        return
    with _print_lock:
        print(f"  {DIM}{B7}  → {msg}{RST}")
        sys.stdout.flush()


def _ok(msg):
    with _print_lock:
        print(f"  {G1}  ✓ {msg}{RST}")
        sys.stdout.flush()


def _err(msg):
    with _print_lock:
        print(f"  {R1}  ✗ {msg}{RST}", file=sys.stderr)
        sys.stderr.flush()


# ─── Sources ───


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _planted(text):
    try:
        k, s, p_in, p_out = text.split(":")
        return int(k), int(s), float(p_in), float(p_out)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K:S:P_IN:P_OUT, got {text!r}")


def load_source(args):
    """SourceGraph and a short description from --source / --planted."""
    if args.source:
        if args.format == "points":
            if args.tau is None:
                raise ValueError("--tau is required with --format points")
            pts = streams.load_points(args.source)
            return streams.threshold_graph(pts, args.tau), f"points:{args.source}@{args.tau}"
        return streams.load_edge_list(args.source), f"edges:{args.source}"
    k, s, p_in, p_out = args.planted or config.DEFAULT_PLANTED
    src = streams.planted_partition(k, s, p_in, p_out, seed=args.seed)
    return src, f"planted:{k}:{s}:{p_in}:{p_out}"


def _out_path(args, prefix):
    if args.out:
        return args.out
    return os.path.join(env.RESULTS_DIR, f"{prefix}-{state.new_run_id()}.csv")


# ─── Commands ───


def cmd_run(args):
    """Checkpointed run of each algorithm over one or more seeded streams."""
    algs = tuple(a.strip() for a in args.algs.split(",") if a.strip())
    for a in algs:
        if a not in config.COMPARE_ALGORITHMS:
            _err(f"unknown algorithm {a!r}")
            return EXIT_USAGE
    src, label = load_source(args)
    banner("node-stream run")
    _status(f"source {label}: n={src.n} m={src.m}")
    specs = [
        bench.RunSpec(
            src=src, source=label, algs=algs, epsilon=args.epsilon, mode=args.mode,
            p_delete=args.p_delete, seed=args.seed + i, checkpoint_every=args.checkpoint_every,
            geometric=args.geometric_gaps, convention=args.convention,
            theory_scale=args.theory_scale, probe_scale=args.probe_scale,
            deferred_phi=args.deferred_phi, exact=args.exact_probes,
        )
        for i in range(args.seeds)
    ]
    _phase(1, 2, f"running {len(specs)} seed(s) on {min(args.workers, len(specs))} worker(s)")
    results = workers.run_sweep(bench.run_stream, specs, args.workers)
    rows = [r for chunk in results for r in chunk]
    out = _out_path(args, "run")
    _phase(2, 2, "writing results")
    bench.write_csv(rows, out)
    if not rows:
        _status("empty stream, no checkpoints scored")
    run_id = state.new_run_id()
    for spec, chunk in zip(specs, results):
        for alg in algs:
            scored = [r for r in chunk if r["alg"] == alg]
            if not scored:
                continue
            final = scored[-1]
            state.record_run(run_id, "run", alg, spec.seed, label, final["t"] + 1,
                             final["total"], final["relative"], out)
    state.set_state("last_out", out)
    _ok(f"{len(rows)} rows → {out}")
    return EXIT_OK


def cmd_density(args):
    """DA vs Pivot stand-in over threshold graphs of growing density."""
    targets = tuple(int(x) for x in args.targets.split(","))
    banner("density sweep")
    _status(f"{args.points} points in {args.dim}-d, targets {targets}")
    rows = bench.density_sweep(
        points=args.points, dim=args.dim, centers=args.centers, targets=targets,
        p_delete=args.p_delete, seed=args.seed, epsilon=args.epsilon,
        quality_every=args.quality_every,
    )
    out = _out_path(args, "density")
    bench.write_csv(rows, out, bench.DENSITY_FIELDS)
    for r in rows:
        _status(f"deg≈{r['avg_degree']:>7} {r['alg']:<10} probes/upd={r['probe_calls_per_update']:<9} "
                f"touched/upd={r['touched_per_update']:<9} rel={r['relative_objective']}")
    state.set_state("last_out", out)
    _ok(f"{len(rows)} rows → {out}")
    return EXIT_OK


def cmd_compare(args):
    """Final objective after a pure-insertion stream, relative to singletons."""
    src, label = load_source(args)
    banner("additions-only comparison")
    rows = bench.final_comparison(src, seed=args.seed, epsilon=args.epsilon, convention=args.convention)
    out = _out_path(args, "compare")
    bench.write_csv(rows, out, bench.COMPARE_FIELDS)
    for r in rows:
        _status(f"{r['alg']:<13} cost={r['total']:<8} relative={r['relative']}")
    state.set_state("last_out", out)
    _ok(f"{len(rows)} rows → {out}")
    return EXIT_OK


def cmd_oracle(args):
    """Run the self-check suites; exit 1 if any fails."""
    names = [s.strip() for s in args.suites.split(",")] if args.suites else None
    banner("oracle checks")
    results = oracle.run_suites(names, seed=args.seed, inject=args.inject_violation, scale=args.scale)
    failed = 0
    for r in results:
        line = f"{r.name}: rate={r.rate:.4f} (need {r.threshold:.4f}) over {r.trials} trials"
        if r.detail:
            line += f" — {r.detail}"
        if r.passed:
            _ok(line)
        else:
            failed += 1
            _err(line)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_timeline(args):
    print(state.format_timeline(args.limit))
    return EXIT_OK


def cmd_status(args):
    print(state.format_status(args.limit))
    return EXIT_OK


# ─── Argument parsing ───


def _add_source_flags(p):
    p.add_argument("--source", help="edge list or point file")
    p.add_argument("--format", choices=("edges", "points"), default="edges", help="format of --source")
    p.add_argument("--tau", type=float, help="distance threshold for point sources")
    p.add_argument("--planted", type=_planted, help="synthetic source K:S:P_IN:P_OUT (default 5:20:1.0:0.02)")


def build_parser():
    parser = argparse.ArgumentParser(prog="dcc", description="DCC: dynamic correlation clustering bench")
    parser.add_argument("--quiet", action="store_true", help="only print results and errors")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="checkpointed run over a node stream")
    _add_source_flags(run)
    run.add_argument("--epsilon", type=float, default=config.EPSILON)
    run.add_argument("--mode", choices=("practical", "theory"), default="practical")
    run.add_argument("--p-delete", type=float, default=config.P_DELETE)
    run.add_argument("--geometric-gaps", action="store_true", help="keep deleting until the coin fails")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--seeds", type=_positive_int, default=1, help="number of consecutive seeds")
    run.add_argument("--workers", type=int, default=env.WORKERS)
    run.add_argument("--checkpoint-every", type=_positive_int, default=config.CHECKPOINT_EVERY)
    run.add_argument("--algs", default=",".join(config.ALGORITHMS))
    run.add_argument("--convention", choices=("closed", "open"), default=config.NEIGHBORHOOD)
    run.add_argument("--theory-scale", type=float, default=env.THEORY_SCALE or config.THEORY_SCALE)
    run.add_argument("--probe-scale", type=float, default=config.PROBE_SCALE)
    run.add_argument("--deferred-phi", action="store_true", help="apply anchor changes once per event")
    run.add_argument("--exact-probes", action="store_true", help="answer probes from full neighborhoods")
    run.add_argument("--out")
    run.set_defaults(func=cmd_run)

    dens = sub.add_parser("density", help="per-update work across graph densities")
    dens.add_argument("--points", type=int, default=config.DENSITY_POINTS)
    dens.add_argument("--dim", type=int, default=config.DENSITY_DIM)
    dens.add_argument("--centers", type=int, default=config.DENSITY_CENTERS)
    dens.add_argument("--targets", default=",".join(map(str, config.DENSITY_TARGETS)))
    dens.add_argument("--epsilon", type=float, default=config.EPSILON)
    dens.add_argument("--p-delete", type=float, default=config.P_DELETE)
    dens.add_argument("--quality-every", type=int, default=config.QUALITY_EVERY)
    dens.add_argument("--seed", type=int, default=0)
    dens.add_argument("--out")
    dens.set_defaults(func=cmd_density)

    comp = sub.add_parser("compare", help="final objectives after an additions-only stream")
    _add_source_flags(comp)
    comp.add_argument("--epsilon", type=float, default=config.EPSILON)
    comp.add_argument("--convention", choices=("closed", "open"), default=config.NEIGHBORHOOD)
    comp.add_argument("--seed", type=int, default=0)
    comp.add_argument("--out")
    comp.set_defaults(func=cmd_compare)

    orc = sub.add_parser("oracle", help="differential and statistical self-checks")
    orc.add_argument("--suites", help=f"comma list of {','.join(oracle.SUITES)}")
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--scale", type=float, default=1.0, help="multiplier on trial counts")
    orc.add_argument("--inject-violation", action="store_true", help=argparse.SUPPRESS)
    orc.set_defaults(func=cmd_oracle)

    tl = sub.add_parser("timeline", help="recent journal events")
    tl.add_argument("--limit", type=int, default=30)
    tl.set_defaults(func=cmd_timeline)

    st = sub.add_parser("status", help="recent runs")
    st.add_argument("--limit", type=int, default=10)
    st.set_defaults(func=cmd_status)
    return parser


def main(argv=None):
    global _quiet
    parser = build_parser()
    args = parser.parse_args(argv)
    _quiet = args.quiet
    state.log("command", args.command)
    try:
        return args.func(args)
    except (OSError, ValueError, GraphError) as e:
        # StreamFormatError is a ValueError
        _err(str(e))
        state.log("command_error", f"{args.command}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
