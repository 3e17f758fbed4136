"""Benchmark sweeps over instances, hop bounds, epsilons and seeds."""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .baseline import solve_matching_baseline
from .errors import HopMSTError, InputError
from .graph import Graph, bfs_tree, generate, read_graph
from .oracle import brute_force_opt
from .sampler import SolveParams, solve, solve_amplified

ALGORITHMS = ("sampling", "matching")


@dataclass
class BenchConfig:
    """Sweep definition.

    ``instances`` entries are either ``{"file": path}`` or
    ``{"family": name, "n": int, "params": {...}, "seed": int}``; an optional
    ``"id"`` names the instance. ``h`` entries are ints or ``"auto"`` (the
    hop diameter of the BFS tree from vertex 0).
    """

    instances: list[dict]
    h: list
    epsilon: list[float]
    seeds: list[int]
    algorithms: list[str] = field(default_factory=lambda: ["sampling"])
    trials: int = 1
    oracle_max_n: int = 8
    workers: int = 1
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        for name in ("instances", "h", "epsilon", "seeds", "algorithms"):
            if not getattr(self, name):
                raise InputError(f"bench config axis {name!r} is empty")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise InputError(f"unknown algorithm {algo!r}")
        if self.format not in ("csv", "json"):
            raise InputError("format must be csv or json")
        for inst in self.instances:
            if "file" in inst and not Path(inst["file"]).exists():
                raise InputError(f"instance file {inst['file']} does not exist")

    @classmethod
    def from_dict(cls, doc: dict) -> BenchConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise InputError(f"unknown bench config keys: {sorted(unknown)}")
        return cls(**doc)

    @classmethod
    def load(cls, path) -> BenchConfig:
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise InputError(f"bad bench config: {exc}") from None


@dataclass
class BenchRecord:
    instance: str
    n: int
    m: int
    h: int
    epsilon: float | None
    algorithm: str
    seed: int | None
    status: str = "ok"
    total_weight: float | None = None
    hop_diameter: int | None = None
    rounds_used: int | None = None
    wall_time: float | None = None
    opt_weight: float | None = None
    weight_ratio: float | None = None
    diameter_slack: float | None = None


COLUMNS = [f.name for f in fields(BenchRecord)]


def _instance(entry: dict) -> tuple[str, Graph]:
    if "file" in entry:
        return entry.get("id", Path(entry["file"]).stem), read_graph(entry["file"])
    family, n = entry["family"], int(entry["n"])
    seed = int(entry.get("seed", 0))
    g = generate(family, n, entry.get("params"), seed)
    return entry.get("id", f"{family}-n{n}-s{seed}"), g


def _resolve_h(value, g: Graph) -> int:
    if value == "auto":
        return bfs_tree(g, [(u, v) for u, v, _ in g.edges], 0).hop_diameter
    return int(value)


def _run_cell(cell) -> BenchRecord:
    name, g, h, eps, algo, seed, trials, opt = cell
    rec = BenchRecord(name, g.n, g.m, h, eps, algo, seed)
    start = time.perf_counter()
    try:
        if algo == "matching":
            tree, rounds = solve_matching_baseline(g, h)
        elif trials > 1:
            amp = solve_amplified(g, SolveParams(eps, h, seed), trials)
            tree, rounds = amp.tree, amp.trace.rounds_used
        else:
            tree, trace = solve(g, SolveParams(eps, h, seed))
            rounds = trace.rounds_used
    except HopMSTError as exc:
        rec.status = f"{type(exc).__name__}: {exc}"
        rec.wall_time = time.perf_counter() - start
        return rec
    rec.wall_time = time.perf_counter() - start
    rec.total_weight = tree.total_weight
    rec.hop_diameter = tree.hop_diameter
    rec.rounds_used = rounds
    rec.diameter_slack = tree.hop_diameter / h
    if opt is not None and math.isfinite(opt):
        rec.opt_weight = opt
        rec.weight_ratio = tree.total_weight / opt if opt > 0 else (1.0 if tree.total_weight == 0 else math.inf)
    return rec


def plan_cells(config: BenchConfig) -> list[tuple]:
    """Expand the sweep in config order. The matching baseline ignores
    epsilon and seed, so it gets one cell per (instance, h)."""
    cells = []
    for entry in config.instances:
        try:
            name, g = _instance(entry)
        except HopMSTError as exc:
            cells.append(("error", entry, str(exc)))
            continue
        for hv in config.h:
            h = _resolve_h(hv, g)
            opt = None
            if g.n <= config.oracle_max_n:
                opt = brute_force_opt(g, h).opt_weight
            for algo in config.algorithms:
                if algo == "matching":
                    cells.append((name, g, h, None, algo, None, 1, opt))
                    continue
                for eps in config.epsilon:
                    for seed in config.seeds:
                        cells.append((name, g, h, float(eps), algo, int(seed), config.trials, opt))
    return cells


def run_bench(config: BenchConfig) -> tuple[list[BenchRecord], dict]:
    cells = plan_cells(config)
    records: list[BenchRecord] = []
    runnable = [c for c in cells if c[0] != "error"]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            done = iter(pool.map(_run_cell, runnable))
    else:
        done = map(_run_cell, runnable)
    for cell in cells:
        if cell[0] == "error":
            entry = cell[1]
            records.append(BenchRecord(str(entry.get("id", entry)), 0, 0, 0, None, "-", None,
                                       status=f"InputError: {cell[2]}"))
        else:
            records.append(next(done))
    return records, summarize(records)


def summarize(records: list[BenchRecord]) -> dict:
    """Per algorithm, per epsilon: median weight ratio and max diameter slack."""
    groups: dict[str, dict] = {}
    for rec in records:
        if rec.status != "ok":
            continue
        key = "" if rec.epsilon is None else repr(rec.epsilon)
        groups.setdefault(rec.algorithm, {}).setdefault(key, []).append(rec)
    out = {}
    for algo in sorted(groups):
        rows = []
        for key in sorted(groups[algo], key=lambda k: (k != "", float(k) if k else 0.0)):
            recs = groups[algo][key]
            ratios = [r.weight_ratio for r in recs if r.weight_ratio is not None]
            rows.append({
                "epsilon": recs[0].epsilon,
                "cells": len(recs),
                "median_ratio": statistics.median(ratios) if ratios else None,
                "max_slack": max(r.diameter_slack for r in recs),
                "max_rounds_used": max(r.rounds_used for r in recs),
            })
        out[algo] = rows
    return out


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_to_csv(records: list[BenchRecord], *, timing: bool = True) -> str:
    cols = COLUMNS if timing else [c for c in COLUMNS if c != "wall_time"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in records:
        row = asdict(rec)
        writer.writerow([_cell(row[c]) for c in cols])
    return buf.getvalue()


def records_to_json(records: list[BenchRecord], *, timing: bool = True) -> str:
    rows = []
    for rec in records:
        row = asdict(rec)
        if not timing:
            row.pop("wall_time")
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


SUMMARY_COLUMNS = ["algorithm", "epsilon", "cells", "median_ratio", "max_slack", "max_rounds_used"]


def emit_report(records: list[BenchRecord], fmt: str = "csv") -> str:
    """Tradeoff table: per algorithm section, one row per epsilon."""
    if not records:
        raise InputError("no records to report")
    summary = summarize(records)
    if fmt == "json":
        return json.dumps(summary, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for algo, rows in summary.items():
        buf.write(f"# {algo}\n")
        writer.writerow(SUMMARY_COLUMNS)
        for row in rows:
            writer.writerow([algo] + [_cell(row[c]) for c in SUMMARY_COLUMNS[1:]])
    return buf.getvalue()
