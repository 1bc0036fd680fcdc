"""Command-line front door: ingestion -> metrics -> graph -> recommender.

Subcommands write CSV/JSON artifacts into an output directory (``--out-dir``,
or the TAGTRACE_OUT environment variable) and print a short human summary on
stdout. All outputs are deterministic: no timestamps, stable row order, and
shortest round-trip decimal formatting for floats, so re-running a command
overwrites its outputs byte-identically.

Exit codes: 0 success; 2 for configuration or usage problems; 1 for data
errors (empty trace, no evaluable users, pair-cap overflow). Failures print
a single JSON object on stderr with ``error`` and ``message`` fields.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import (
    ColdStartError,
    ConfigError,
    EmptyInputError,
    EmptyTraceError,
    PairLimitError,
    TagTraceError,
)
from .graph import build_graph, knee_threshold, topology
from .recommend import evaluate, quantile_cutoff, split
from .reuse import DIMENSIONS, classify, daily_series, summarize
from .similarity import MODES, all_pairs, cdf, summary, windowed
from .synth import GenConfig, generate
from .trace import DEFAULT_PIPE_COLUMNS, FORMATS, build_profiles, parse_trace

DEFAULT_THRESHOLDS = {"user-item": 0.05, "user-tag": 0.03}

_CONFIG_EXIT = 2
_DATA_EXIT = 1


def _fmt(x) -> str:
    """Shortest decimal that round-trips to the same float."""
    return repr(float(x))


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _out_dir(args) -> Path:
    base = args.out_dir or os.environ.get("TAGTRACE_OUT") or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load_trace(args):
    source = sys.stdin if args.input == "-" else args.input
    columns = tuple(c.strip() for c in args.pipe_columns.split(","))
    return parse_trace(source, fmt=args.format, pipe_columns=columns)


def _add_input_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="trace file, or - for stdin")
    p.add_argument(
        "-f", "--format", choices=FORMATS, default="canonical-tsv",
        help="input trace format (default: %(default)s)",
    )
    p.add_argument(
        "--pipe-columns", default=",".join(DEFAULT_PIPE_COLUMNS),
        help="column order for the pipe format (default: %(default)s)",
    )
    p.add_argument("-o", "--out-dir", default=None, help="output directory")


def cmd_validate(args) -> int:
    trace, report = _load_trace(args)
    print(f"users {len(trace.users)}")
    print(f"items {len(trace.items)}")
    print(f"tags {len(trace.tags)}")
    print(f"assignments {len(trace)}")
    print(report.to_json())
    return 0


def cmd_reuse(args) -> int:
    trace, _ = _load_trace(args)
    dims = list(DIMENSIONS) if args.dimension == "all" else [args.dimension]
    out = _out_dir(args)
    classified = list(classify(trace))
    summaries = []
    for dim in dims:
        series = daily_series(classified, dim, distinct=args.distinct)
        suffix = "-distinct" if args.distinct else ""
        _write_csv(
            out / f"reuse-{dim}{suffix}-daily.csv",
            ["day", "total", "new_count", "reused_count", "reused_pct"],
            (
                [r.day.isoformat(), r.total, r.new_count, r.reused_count, _fmt(r.reused_pct)]
                for r in series
            ),
        )
        s = summarize(series, dim)
        summaries.append(s.as_dict())
        print(
            f"{dim}: reused mean {s.mean_abs:.2f}/day ({s.mean_pct:.2f}%), "
            f"median {s.median_abs:.2f} ({s.median_pct:.2f}%) over {s.days} days"
        )
    _write_json(out / "reuse-summary.json", {"dimensions": summaries})
    return 0


def cmd_similarity(args) -> int:
    trace, _ = _load_trace(args)
    out = _out_dir(args)
    profiles = build_profiles(trace)
    sim = all_pairs(profiles, args.mode, max_pairs=args.max_pairs)
    _write_csv(
        out / f"similarity-{args.mode}-pairs.csv",
        ["user_a", "user_b", "weight"],
        ((a, b, _fmt(w)) for a, b, w in sim.pairs()),
    )
    s = summary(sim, population=args.population)
    points = cdf(sim, population=args.population, grid=args.grid)
    _write_csv(
        out / f"similarity-{args.mode}-cdf.csv",
        ["threshold", "cum_prob"],
        ((_fmt(t), _fmt(p)) for t, p in points),
    )
    _write_json(out / f"similarity-{args.mode}-summary.json", s.as_dict())
    print(
        f"{args.mode}: {len(sim)} nonzero pairs of {sim.universe} users; "
        f"{args.population} mean {s.mean:.6f}, sd {s.sd:.6f}, median {s.median:.6f}"
    )
    return 0


def cmd_windows(args) -> int:
    trace, _ = _load_trace(args)
    out = _out_dir(args)
    stats = windowed(
        trace, args.mode, window_days=args.window_days, cumulative=args.cumulative
    )
    rows = []
    for w in stats:
        q = [_fmt(v) for v in w.quartiles] if w.quartiles else ["", "", "", "", ""]
        rows.append([w.window_start.isoformat(), w.population, *q])
    suffix = "-cumulative" if args.cumulative else ""
    _write_csv(
        out / f"windows-{args.mode}{suffix}.csv",
        ["window_start", "population", "min", "q1", "median", "q3", "max"],
        rows,
    )
    print(f"{args.mode}: {len(stats)} windows of {args.window_days} days")
    return 0


def cmd_graph(args) -> int:
    trace, _ = _load_trace(args)
    out = _out_dir(args)
    profiles = build_profiles(trace)
    sim = all_pairs(profiles, args.mode, max_pairs=args.max_pairs)
    if args.threshold == "knee":
        points = cdf(sim, population="nonzero", grid=args.grid)
        threshold = knee_threshold(points)
    elif args.threshold is None:
        threshold = DEFAULT_THRESHOLDS[args.mode]
    else:
        try:
            threshold = float(args.threshold)
        except ValueError:
            raise ConfigError(
                f"--threshold must be a number or 'knee', got {args.threshold!r}"
            ) from None
    g = build_graph(sim, trace.users, threshold)
    report = topology(g)
    _write_csv(
        out / f"graph-{args.mode}-edges.csv",
        ["user_a", "user_b", "weight"],
        ((a, b, _fmt(w)) for (a, b), w in g.edges.items()),
    )
    degrees = g.degrees()
    _write_csv(
        out / f"graph-{args.mode}-nodes.csv",
        ["user", "degree"],
        ((u, degrees[u]) for u in g.nodes),
    )
    _write_json(out / f"graph-{args.mode}-topology.json", report.as_dict())
    print(
        f"{args.mode} at threshold {threshold:g}: {report.nodes} nodes, "
        f"{report.edges} edges, isolated {report.isolated_fraction:.2%}, "
        f"giant {report.giant_size}, clustering(core) "
        f"{report.avg_clustering_core if report.avg_clustering_core is not None else 'n/a'}"
    )
    return 0


def cmd_recommend(args) -> int:
    trace, _ = _load_trace(args)
    out = _out_dir(args)
    if args.cutoff is not None:
        cutoff = args.cutoff
    else:
        cutoff = quantile_cutoff(trace, args.cutoff_quantile)
    sp = split(trace, cutoff)
    report = evaluate(
        sp,
        k=args.k,
        n=args.n,
        mode=args.mode,
        min_weight=args.min_weight,
        threads=args.threads,
    )
    _write_json(out / f"recommend-{args.mode}-eval.json", report.as_dict())
    if args.per_user:
        _write_csv(
            Path(args.per_user),
            ["user", "hits", "success", "reused_only_applicable", "reused_only_success"],
            (
                [
                    o.user,
                    o.hits,
                    int(o.success),
                    int(o.reused_only_applicable),
                    "" if o.reused_only_success is None else int(o.reused_only_success),
                ]
                for o in report.per_user
            ),
        )
    reused = (
        f"{report.success_rate_reused_only:.4f}"
        if report.success_rate_reused_only is not None
        else "n/a"
    )
    print(
        f"evaluated {report.users_evaluated} users: success {report.success_rate:.4f}, "
        f"reused-only {reused} ({report.reused_only_users} applicable)"
    )
    return 0


def cmd_synth(args) -> int:
    cfg = GenConfig(
        seed=args.seed,
        users=args.users,
        days=args.days,
        events_per_day=args.events_per_day,
        item_reuse_p=args.item_reuse_p,
        tag_reuse_p=args.tag_reuse_p,
        communities=args.communities,
        intra_community_item_pool=args.pool,
        noise_p=args.noise_p,
    )
    trace, truth = generate(cfg)
    if args.out:
        trace.to_tsv(args.out)
        truth_path = args.truth or f"{args.out}.truth.json"
        with open(truth_path, "w", encoding="utf-8") as fh:
            fh.write(truth.to_json())
            fh.write("\n")
    else:
        trace.to_tsv(sys.stdout)
        if args.truth:
            with open(args.truth, "w", encoding="utf-8") as fh:
                fh.write(truth.to_json())
                fh.write("\n")
    return 0


def cmd_report(args) -> int:
    trace, validation = _load_trace(args)
    profiles = build_profiles(trace)
    classified = list(classify(trace))
    bundle: dict = {
        "counts": {
            "users": len(trace.users),
            "items": len(trace.items),
            "tags": len(trace.tags),
            "assignments": len(trace),
        },
        "validation": validation.as_dict(),
        "reuse": [],
        "similarity": {},
        "topology": {},
    }
    for dim in DIMENSIONS:
        series = daily_series(classified, dim)
        bundle["reuse"].append(summarize(series, dim).as_dict())
    for mode in args.modes:
        sim = all_pairs(profiles, mode, max_pairs=args.max_pairs)
        bundle["similarity"][mode] = summary(sim, population=args.population).as_dict()
        g = build_graph(sim, trace.users, DEFAULT_THRESHOLDS[mode])
        bundle["topology"][mode] = topology(g).as_dict()
    text = json.dumps(bundle, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagtrace",
        description="Trace analytics for collaborative tagging communities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a trace and print counts plus a validation report")
    _add_input_opts(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("reuse", help="daily new-vs-reused series and summary statistics")
    _add_input_opts(p)
    p.add_argument("-d", "--dimension", choices=(*DIMENSIONS, "all"), default="all")
    p.add_argument(
        "--distinct", action="store_true",
        help="count each entity once per day instead of counting assignments",
    )
    p.set_defaults(func=cmd_reuse)

    p = sub.add_parser("similarity", help="pairwise interest-sharing weights, summary, and CDF")
    _add_input_opts(p)
    p.add_argument("-m", "--mode", choices=MODES, default="user-item")
    p.add_argument("--population", choices=("nonzero", "all"), default="nonzero")
    p.add_argument("--grid", type=int, default=100, help="CDF grid steps (default: %(default)s)")
    p.add_argument(
        "--max-pairs", type=int, default=None,
        help="hard cap on stored nonzero pairs; exceeding it is an error",
    )
    p.set_defaults(func=cmd_similarity)

    p = sub.add_parser("windows", help="windowed weight quartiles across the trace lifetime")
    _add_input_opts(p)
    p.add_argument("-m", "--mode", choices=MODES, default="user-item")
    p.add_argument("--window-days", type=int, default=30)
    p.add_argument(
        "--cumulative", action="store_true",
        help="grow profiles from the trace start instead of per-window",
    )
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("graph", help="thresholded interest-sharing graph and topology")
    _add_input_opts(p)
    p.add_argument("-m", "--mode", choices=MODES, default="user-item")
    p.add_argument(
        "-t", "--threshold", default=None,
        help="edge cutoff: a number, or 'knee' to locate the CDF knee "
        "(default: 0.05 for user-item, 0.03 for user-tag)",
    )
    p.add_argument("--grid", type=int, default=100, help="CDF grid for knee detection")
    p.add_argument("--max-pairs", type=int, default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("recommend", help="temporal split, neighbor recommendations, success rates")
    _add_input_opts(p)
    when = p.add_mutually_exclusive_group(required=True)
    when.add_argument("--cutoff", type=int, default=None, help="split timestamp (epoch seconds)")
    when.add_argument(
        "--cutoff-quantile", type=float, default=None,
        help="split at the event-count quantile, e.g. 0.8",
    )
    p.add_argument("-k", type=int, default=20, help="neighbors considered (default: %(default)s)")
    p.add_argument("-n", type=int, default=10, help="list size (default: %(default)s)")
    p.add_argument("-m", "--mode", choices=("items", "tags"), default="items")
    p.add_argument("--min-weight", type=float, default=0.0, help="drop neighbors below this weight")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--per-user", default=None, help="also write per-user outcomes CSV here")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("synth", help="generate a synthetic trace with planted statistics")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--users", type=int, default=100)
    p.add_argument("--days", type=int, default=30)
    p.add_argument("--events-per-day", type=int, default=200)
    p.add_argument("--item-reuse-p", type=float, default=0.5)
    p.add_argument("--tag-reuse-p", type=float, default=0.8)
    p.add_argument("--communities", type=int, default=1)
    p.add_argument("--pool", type=int, default=0, help="per-community entity pool size")
    p.add_argument("--noise-p", type=float, default=0.0)
    p.add_argument("--out", default=None, help="trace file (default: stdout)")
    p.add_argument("--truth", default=None, help="ground-truth JSON path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", help="single JSON bundling validation, reuse, similarity, topology")
    _add_input_opts(p)
    p.add_argument("--modes", nargs="+", choices=MODES, default=list(MODES))
    p.add_argument("--population", choices=("nonzero", "all"), default="nonzero")
    p.add_argument("--max-pairs", type=int, default=None)
    p.add_argument("--out", default=None, help="write the bundle here instead of stdout")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _emit_error(exc)
        return _CONFIG_EXIT
    except (EmptyTraceError, EmptyInputError, ColdStartError, PairLimitError) as exc:
        _emit_error(exc)
        return _DATA_EXIT
    except TagTraceError as exc:
        _emit_error(exc)
        return _DATA_EXIT
    except OSError as exc:
        _emit_error(exc)
        return _DATA_EXIT


def _emit_error(exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
