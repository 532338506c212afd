"""Command-line entry point.

Subcommands: run (single seeded run), bench (multi-seed suite campaigns),
metrics (indicators for a front file against a reference), compare
(significance test between two saved reports), serve (HTTP session service).

Successful invocations print one machine-parsable key=value summary line
and exit 0; failures print a diagnostic to stderr and exit non-zero. The
QIHSI_SEED environment variable overrides --seed when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .engine import RunConfig, run
from .harness import BatchReport, bench, compare, import_front
from .metrics import hv_reference_point, hypervolume, igd, psp, spacing


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _cmd_run(args) -> int:
    data: dict = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    if args.problem is not None:
        data["problem"] = args.problem
    if args.algo is not None:
        data["algo"] = args.algo
    if args.pop is not None:
        data["pop"] = args.pop
    if args.iters is not None:
        data["iters"] = args.iters
    if args.archive is not None:
        data["archive"] = args.archive
    if args.seed is not None:
        data["seed"] = args.seed
    env_seed = os.environ.get("QIHSI_SEED")
    if env_seed is not None:
        data["seed"] = int(env_seed)
    quantum = dict(data.get("quantum", {}))
    if args.beta is not None:
        quantum["beta"] = args.beta
    if args.rot_sigma is not None:
        quantum["rot_sigma"] = args.rot_sigma
    if args.sign_flip is not None:
        quantum["sign_flip"] = args.sign_flip == "on"
    if quantum:
        data["quantum"] = quantum
    dmil = dict(data.get("dmil", {}))
    if args.dmil is not None:
        dmil["scenario"] = args.dmil
        dmil["enabled"] = True
    if args.tau is not None:
        dmil["tau"] = args.tau
    if args.gamma is not None:
        dmil["gamma"] = args.gamma
    if dmil:
        data["dmil"] = dmil

    config = RunConfig.from_dict(data)
    record = run(config)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(record.to_dict(), fh)
            fh.write("\n")
    parts = [
        "run",
        f"problem={config.problem}",
        f"algo={config.algo}",
        f"pop={config.pop}",
        f"iters={config.iters}",
        f"seed={config.seed}",
        f"front_size={record.final_front.shape[0]}",
    ]
    if record.metrics is not None:
        parts += [
            f"igd={_fmt(record.metrics.igd)}",
            f"hv={_fmt(record.metrics.hv)}",
        ]
    if record.adas_indicators is not None:
        ind = record.adas_indicators
        parts += [f"si={_fmt(ind.si)}", f"efa={_fmt(ind.efa)}"]
        if ind.dc is not None:
            parts.append(f"dc={_fmt(ind.dc)}")
    parts.append(f"wall={_fmt(record.wall_seconds)}")
    if args.out:
        parts.append(f"out={args.out}")
    print(" ".join(parts))
    return 0


def _cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    report = bench(
        suite=args.suite,
        algos=algos,
        n_runs=args.runs,
        seed_base=args.seed_base,
        pop=args.pop,
        iters=args.iters,
        workers=args.workers,
    )
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh)
            fh.write("\n")
    print(
        f"bench suite={args.suite} algos={','.join(algos)} runs={args.runs} "
        f"seed_base={args.seed_base} problems={len(report['problems'])} "
        f"wall={_fmt(report['total_wall_seconds'])}"
        + (f" out={args.out}" if args.out else "")
    )
    return 0


def _cmd_metrics(args) -> int:
    front = import_front(args.front)
    reference = import_front(args.reference)
    if args.ref_point:
        ref_point = np.array([float(v) for v in args.ref_point.split(",")])
    else:
        ref_point = hv_reference_point(reference)
    line = [
        "metrics",
        f"front={args.front}",
        f"n={front.shape[0]}",
        f"igd={_fmt(igd(front, reference))}",
        f"hv={_fmt(hypervolume(front, ref_point))}",
        f"psp={_fmt(psp(front, reference))}",
        f"spacing={_fmt(spacing(front))}",
    ]
    print(" ".join(line))
    return 0


def _load_reports(path: str) -> dict[str, BatchReport]:
    """A report file is either one BatchReport or a bench document with a
    single algorithm; returns {problem_id: report}."""
    with open(path) as fh:
        data = json.load(fh)
    if "aggregates" in data:
        report = BatchReport.from_dict(data)
        return {report.config.problem: report}
    if "problems" in data:
        if len(data.get("algos", [])) != 1:
            raise ValueError(
                f"{path}: bench document must contain exactly one algorithm for compare"
            )
        algo = data["algos"][0]
        return {
            pid: BatchReport.from_dict(block["reports"][algo])
            for pid, block in data["problems"].items()
        }
    raise ValueError(f"{path}: not a batch report or bench document")


def _cmd_compare(args) -> int:
    reports_a = _load_reports(args.a)
    reports_b = _load_reports(args.b)
    shared = [pid for pid in reports_a if pid in reports_b]
    if not shared:
        raise ValueError("no common problems between the two reports")
    for pid in shared:
        row = compare(reports_a[pid], reports_b[pid], args.metric)
        print(
            f"compare problem={pid} metric={row['metric']} "
            f"a={row['a_algo']} b={row['b_algo']} "
            f"a_median={_fmt(row['a_median'])} b_median={_fmt(row['b_median'])} "
            f"better={row['better']} statistic={_fmt(row['statistic'])} "
            f"p={_fmt(row['p_value'])}"
        )
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    default_config = None
    if args.config:
        with open(args.config) as fh:
            default_config = RunConfig.from_dict(json.load(fh))
    app = create_app(default_config=default_config)
    print(f"serve host={args.host} port={args.port}"
          + (f" config={args.config}" if args.config else ""), flush=True)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qihsi", description="multi-objective swarm optimizer toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one seeded run")
    p_run.add_argument("--problem", help="problem id (zdt1..zdt4, uf1..uf4, adas8)")
    p_run.add_argument("--algo", choices=["qihsi", "mssa"])
    p_run.add_argument("--pop", type=int, help="population size")
    p_run.add_argument("--iters", type=int, help="iteration budget")
    p_run.add_argument("--archive", type=int, help="archive capacity")
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--dmil", metavar="SCENARIO",
                       help="enable feedback with a scenario (name or JSON file)")
    p_run.add_argument("--tau", type=int, help="feedback period")
    p_run.add_argument("--gamma", type=float, help="feedback gain")
    p_run.add_argument("--sign-flip", choices=["on", "off"], dest="sign_flip")
    p_run.add_argument("--beta", type=float, help="entanglement amplitude")
    p_run.add_argument("--rot-sigma", type=float, dest="rot_sigma",
                       help="rotation angle std dev (radians)")
    p_run.add_argument("--config", help="JSON run config; flags override its values")
    p_run.add_argument("--out", help="write the run record JSON here")
    p_run.set_defaults(func=_cmd_run)

    p_bench = sub.add_parser("bench", help="multi-seed suite campaign")
    p_bench.add_argument("--suite", required=True, choices=["zdt", "uf", "adas", "all"])
    p_bench.add_argument("--algos", default="qihsi,mssa",
                         help="comma-separated algorithm list")
    p_bench.add_argument("--runs", type=int, default=10)
    p_bench.add_argument("--seed-base", type=int, default=0, dest="seed_base")
    p_bench.add_argument("--pop", type=int, default=100)
    p_bench.add_argument("--iters", type=int, default=250)
    p_bench.add_argument("--workers", type=int, default=None,
                         help="process-pool size (default: sequential)")
    p_bench.add_argument("--out", help="write the bench document JSON here")
    p_bench.set_defaults(func=_cmd_bench)

    p_metrics = sub.add_parser("metrics", help="indicators for a front file")
    p_metrics.add_argument("--front", required=True)
    p_metrics.add_argument("--reference", required=True)
    p_metrics.add_argument("--ref-point", dest="ref_point",
                           help='hypervolume reference, e.g. "1.1,1.1"')
    p_metrics.set_defaults(func=_cmd_metrics)

    p_compare = sub.add_parser("compare", help="significance test between reports")
    p_compare.add_argument("--a", required=True, help="first report JSON")
    p_compare.add_argument("--b", required=True, help="second report JSON")
    p_compare.add_argument("--metric", default="igd")
    p_compare.set_defaults(func=_cmd_compare)

    p_serve = sub.add_parser("serve", help="start the HTTP session service")
    p_serve.add_argument("--port", type=int, default=8400)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--config", help="default run config JSON served to consoles")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
