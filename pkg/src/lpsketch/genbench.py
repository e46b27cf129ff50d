"""Benchmark harness: original vs projected solves over a grid of instance sizes."""
from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import InfeasibleProjection, LpSketchError
from .instances import GenConfig, generate
from .retrieve import Method, run_pipeline
from .sketch import ProjectorKind, derive_seed, projected_dimension
from .solver import Status, solve

CSV_HEADER = [
    "m", "n", "dens", "k", "eps", "seed", "org_time", "prj_time", "status_match",
    "feas1", "feas2", "neg1", "neg2", "obj1", "obj2",
]


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark row.  ``seed`` is ``None`` on per-cell mean rows.

    ``status_match`` tells whether the projected LP got the same
    feasibility status as the original.  Quality columns are filled only for
    feasible instances; ``error`` records a failure that stopped the run.
    Neither ``error`` nor ``feasible`` is a CSV column; on reading,
    ``feasible`` is inferred from whether ``feas1`` is filled.
    """

    m: int
    n: int
    density: float
    k: int
    epsilon: float
    seed: Optional[int]
    org_time: Optional[float] = None
    prj_time: Optional[float] = None
    status_match: Optional[bool] = None
    feas1: Optional[float] = None
    feas2: Optional[float] = None
    neg1: Optional[float] = None
    neg2: Optional[float] = None
    obj1: Optional[float] = None
    obj2: Optional[float] = None
    error: Optional[str] = None
    feasible: bool = True


def _run_instance(cfg: GenConfig, epsilon, k, kind, q):
    base = BenchRecord(cfg.m, cfg.n, cfg.density, k, epsilon, cfg.seed, feasible=cfg.feasible)
    lp, _ = generate(cfg)
    t0 = time.perf_counter()
    org = solve(lp)
    org_time = time.perf_counter() - t0
    base = replace(base, org_time=org_time)
    proj_seed = derive_seed(cfg.seed, 1)
    try:
        if org.status is not Status.OPTIMAL:
            # infeasible runs only need the projected status
            s = time.perf_counter()
            try:
                run = run_pipeline(lp, epsilon, proj_seed, methods=(), k=k, kind=kind, q=q, v_reference=0.0)
                projected_status = run.projected.status
            except InfeasibleProjection:
                projected_status = Status.INFEASIBLE
            prj_time = time.perf_counter() - s
            return replace(base, prj_time=prj_time, status_match=projected_status is org.status)
        run = run_pipeline(lp, epsilon, proj_seed, k=k, kind=kind, q=q, v_reference=org.objective)
    except InfeasibleProjection:
        return replace(base, status_match=False, error="projected LP infeasible")
    except LpSketchError as exc:
        return replace(base, error=f"{type(exc).__name__}: {exc}")
    a = run.reports[Method.BASIS_ALG2].metrics
    p = run.reports[Method.PSEUDOINVERSE].metrics
    return replace(
        base,
        prj_time=run.prj_time(Method.PSEUDOINVERSE),
        status_match=True,
        feas1=a.feas, feas2=p.feas, neg1=a.neg, neg2=p.neg, obj1=a.obj, obj2=p.obj,
    )


def run_bench(
    grid,
    epsilon: float,
    instances_per_cell: int,
    master_seed: int,
    k: Optional[int] = None,
    kind=ProjectorKind.SPARSE,
    q: Optional[float] = None,
    threads: int = 1,
) -> list:
    """Run ``instances_per_cell`` instances for each ``GenConfig`` in ``grid``.

    Instance seeds are derived from ``master_seed``, the cell index and the
    instance index; the ``seed`` field of each cell is ignored.  One
    projector is sampled per instance.  Everything except the two timing
    columns is a pure function of the arguments.
    """
    jobs = []
    for ci, cell in enumerate(grid):
        kk = k if k is not None else projected_dimension(cell.n, epsilon)
        for ii in range(instances_per_cell):
            cfg = replace(cell, seed=derive_seed(master_seed, ci, ii))
            jobs.append((cfg, epsilon, kk, kind, q))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(lambda a: _run_instance(*a), jobs))
    return [_run_instance(*a) for a in jobs]


def cell_means(records) -> list:
    """Average rows per ``(m, n, density, k, epsilon, feasible)`` cell, with ``seed=None``.

    ``status_match`` of a mean row is true only if it holds for every instance.
    """
    groups = {}
    for r in records:
        groups.setdefault((r.m, r.n, r.density, r.k, r.epsilon, r.feasible), []).append(r)
    out = []
    for key, rows in groups.items():
        vals = {}
        for f in ("org_time", "prj_time", "feas1", "feas2", "neg1", "neg2", "obj1", "obj2"):
            xs = [getattr(r, f) for r in rows if getattr(r, f) is not None]
            vals[f] = float(np.mean(xs)) if xs else None
        sm = [r.status_match for r in rows if r.status_match is not None]
        *dims, feasible = key
        out.append(BenchRecord(
            *dims, seed=None, status_match=all(sm) if sm else None, feasible=feasible, **vals
        ))
    return out


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(records, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([
                _fmt(r.m), _fmt(r.n), _fmt(r.density), _fmt(r.k), _fmt(r.epsilon), _fmt(r.seed),
                _fmt(r.org_time), _fmt(r.prj_time), _fmt(r.status_match),
                _fmt(r.feas1), _fmt(r.feas2), _fmt(r.neg1), _fmt(r.neg2), _fmt(r.obj1), _fmt(r.obj2),
            ])


def read_csv(path) -> list:
    def num(s, cast):
        return None if s == "" else cast(s)

    out = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            sm = row["status_match"]
            out.append(BenchRecord(
                m=int(row["m"]), n=int(row["n"]), density=float(row["dens"]), k=int(row["k"]),
                epsilon=float(row["eps"]), seed=num(row["seed"], int),
                org_time=num(row["org_time"], float), prj_time=num(row["prj_time"], float),
                status_match=None if sm == "" else sm == "true",
                **{f: num(row[f], float) for f in ("feas1", "feas2", "neg1", "neg2", "obj1", "obj2")},
                feasible=row["feas1"] != "",
            ))
    return out


def load_grid(path) -> list:
    """Read a sweep config: a list of cells, or ``{"cells": [...]}``.

    Each cell mirrors :class:`GenConfig` (``m``, ``n``, ``density``,
    ``feasible``; ``seed`` optional).
    """
    doc = json.loads(Path(path).read_text())
    cells = doc["cells"] if isinstance(doc, dict) else doc
    known = {f.name for f in fields(GenConfig)}
    return [GenConfig(**{k: v for k, v in c.items() if k in known}) for c in cells]


def timing_ratios(records) -> dict:
    """Mean ``prj_time / org_time`` per ``(m, n, density)``."""
    groups = {}
    for r in records:
        if r.seed is None or not r.org_time or r.prj_time is None:
            continue
        groups.setdefault((r.m, r.n, r.density), []).append(r.prj_time / r.org_time)
    return {key: float(np.mean(v)) for key, v in groups.items() if v and all(map(math.isfinite, v))}
