"""Batch experiment runner: multi-seed campaigns, aggregate statistics,
pairwise algorithm comparison with significance testing, suite orchestration,
and front file import/export.

Batches are deterministic: (config, n_runs, seed_base) fully determines
every reported number except wall-clock fields, whether runs execute
sequentially or on a process pool.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .engine import RunConfig, RunRecord, run
from .metrics import wilcoxon_rank_sum
from .problems import BENCHMARK_IDS, get_problem, read_front_text, write_front_text

# direction each aggregate metric is judged in when comparing algorithms
LOWER_IS_BETTER = {"igd", "spacing", "wall_seconds", "si", "eem", "cps", "sr"}
HIGHER_IS_BETTER = {"hv", "psp", "dc", "efa"}

SUITES: dict[str, tuple[str, ...]] = {
    "zdt": ("zdt1", "zdt2", "zdt3", "zdt4"),
    "uf": ("uf1", "uf2", "uf3", "uf4"),
    "adas": ("adas8",),
    "all": BENCHMARK_IDS,
}


@dataclass
class BatchReport:
    """Aggregated outcome of n_runs independent seeded runs of one config."""

    config: RunConfig
    n_runs: int
    seed_base: int
    runs: list[RunRecord]
    aggregates: dict[str, dict] = field(default_factory=dict)
    total_wall_seconds: float = 0.0

    def values(self, metric: str) -> list[float]:
        if metric not in self.aggregates:
            raise KeyError(f"metric {metric!r} not in report")
        return list(self.aggregates[metric]["values"])

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "n_runs": self.n_runs,
            "seed_base": self.seed_base,
            "aggregates": self.aggregates,
            "runs": [r.to_dict() for r in self.runs],
            "total_wall_seconds": self.total_wall_seconds,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BatchReport":
        """Rebuild enough of a report for comparisons; run records stay raw."""
        report = cls(
            config=RunConfig.from_dict(data["config"]),
            n_runs=data["n_runs"],
            seed_base=data["seed_base"],
            runs=[],
            aggregates=data["aggregates"],
            total_wall_seconds=data.get("total_wall_seconds", 0.0),
        )
        report.raw_runs = data.get("runs", [])
        return report


def _aggregate(values: list[float]) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    std = float(np.std(arr, ddof=1)) if arr.size >= 2 else 0.0
    return {
        "mean": float(arr.mean()),
        "median": float(np.median(arr)),
        "std": std,
        "values": [float(v) for v in arr],
    }


def _collect_aggregates(runs: list[RunRecord]) -> dict[str, dict]:
    out: dict[str, dict] = {}
    if all(r.metrics is not None for r in runs):
        for name in ("igd", "hv", "psp", "spacing"):
            out[name] = _aggregate([getattr(r.metrics, name) for r in runs])
    if all(r.adas_indicators is not None for r in runs):
        for name in ("si", "eem", "cps", "sr", "efa"):
            out[name] = _aggregate([getattr(r.adas_indicators, name) for r in runs])
        dcs = [r.adas_indicators.dc for r in runs]
        if all(v is not None for v in dcs):
            out["dc"] = _aggregate(dcs)
    out["wall_seconds"] = _aggregate([r.wall_seconds for r in runs])
    return out


def run_batch(
    config: RunConfig, n_runs: int, seed_base: int, workers: int | None = None
) -> BatchReport:
    """Execute n_runs runs with seeds seed_base..seed_base+n_runs-1.

    `workers` > 1 fans runs out over a process pool; results are collected
    in seed order, so aggregates match sequential execution exactly.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    get_problem(config.problem)  # fail on a bad problem before any run
    configs = [replace(config, seed=seed_base + i) for i in range(n_runs)]
    t0 = time.perf_counter()
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(run, configs))
    else:
        runs = [run(c) for c in configs]
    total = time.perf_counter() - t0
    return BatchReport(
        config=config,
        n_runs=n_runs,
        seed_base=seed_base,
        runs=runs,
        aggregates=_collect_aggregates(runs),
        total_wall_seconds=total,
    )


def compare(report_a: BatchReport, report_b: BatchReport, metric: str) -> dict:
    """Pairwise comparison row: medians, better side, rank-sum statistic, p."""
    for report in (report_a, report_b):
        if metric not in report.aggregates:
            raise KeyError(f"metric {metric!r} missing from a report")
        if len(report.aggregates[metric]["values"]) < 3:
            raise ValueError("comparison needs at least 3 samples per side")
    a = report_a.aggregates[metric]["values"]
    b = report_b.aggregates[metric]["values"]
    med_a = float(np.median(a))
    med_b = float(np.median(b))
    statistic, p_value = wilcoxon_rank_sum(a, b)
    if med_a == med_b:
        better = "tie"
    elif metric in HIGHER_IS_BETTER:
        better = "a" if med_a > med_b else "b"
    else:
        better = "a" if med_a < med_b else "b"
    return {
        "metric": metric,
        "a_algo": report_a.config.algo,
        "b_algo": report_b.config.algo,
        "a_median": med_a,
        "b_median": med_b,
        "better": better,
        "statistic": statistic,
        "p_value": p_value,
        "n_a": len(a),
        "n_b": len(b),
    }


def export_front(record: RunRecord, fmt: str, path) -> None:
    """Write the record's final front as text, csv, or json.

    All three round-trip exactly through import_front (floats are written
    with full repr precision).
    """
    front = np.atleast_2d(np.asarray(record.final_front, dtype=np.float64))
    if front.size == 0:
        rows: list[list[float]] = []
        m = 0
    else:
        rows = [[float(v) for v in row] for row in front]
        m = front.shape[1]
    path = Path(path)
    if fmt == "text":
        write_front_text(path, record.final_front)
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([f"f{i + 1}" for i in range(m)])
            for row in rows:
                writer.writerow([repr(v) for v in row])
    elif fmt == "json":
        with open(path, "w") as fh:
            json.dump(rows, fh)
            fh.write("\n")
    else:
        raise ValueError(f"unknown front format: {fmt!r}")


def import_front(path, fmt: str | None = None) -> np.ndarray:
    """Read a front file written by export_front; format inferred from the
    extension when not given (.csv, .json, anything else = text)."""
    path = Path(path)
    if fmt is None:
        fmt = {".csv": "csv", ".json": "json"}.get(path.suffix.lower(), "text")
    if fmt == "text":
        return read_front_text(path)
    if fmt == "csv":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            data = [row for row in reader if row]
        if len(data) <= 1:
            return np.empty((0, 0))
        return np.array([[float(v) for v in row] for row in data[1:]])
    if fmt == "json":
        with open(path) as fh:
            rows = json.load(fh)
        if not rows:
            return np.empty((0, 0))
        return np.array(rows, dtype=np.float64)
    raise ValueError(f"unknown front format: {fmt!r}")


def bench(
    suite: str,
    algos: list[str],
    n_runs: int,
    seed_base: int,
    pop: int = 100,
    iters: int = 250,
    workers: int | None = None,
) -> dict:
    """Run every (problem, algo) pair of a suite and compare algo pairs.

    Problems with a reference front are compared on IGD and HV; the
    calibration problem is compared on knee safety instead.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if not algos:
        raise ValueError("need at least one algorithm")
    t0 = time.perf_counter()
    problems: dict[str, dict] = {}
    for pid in SUITES[suite]:
        reports: dict[str, BatchReport] = {}
        for algo in algos:
            config = RunConfig(problem=pid, algo=algo, pop=pop, iters=iters)
            reports[algo] = run_batch(config, n_runs, seed_base, workers=workers)
        comparisons = []
        if n_runs >= 3:
            sample = next(iter(reports.values()))
            metrics = ["igd", "hv"] if "igd" in sample.aggregates else ["si"]
            for i, algo_a in enumerate(algos):
                for algo_b in algos[i + 1 :]:
                    for metric in metrics:
                        comparisons.append(
                            compare(reports[algo_a], reports[algo_b], metric)
                        )
        problems[pid] = {
            "reports": {algo: rep.to_dict() for algo, rep in reports.items()},
            "comparisons": comparisons,
        }
    return {
        "suite": suite,
        "algos": list(algos),
        "n_runs": n_runs,
        "seed_base": seed_base,
        "pop": pop,
        "iters": iters,
        "problems": problems,
        "total_wall_seconds": time.perf_counter() - t0,
    }
