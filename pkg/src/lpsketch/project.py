"""Projected LPs, membership oracles and feasibility-preservation trials."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NotInCone
from .instances import GenConfig, gen_feasible, gen_infeasible
from .lp_model import StandardFormLp
from .sketch import Projector, ProjectorKind, apply, derive_seed, projected_dimension, sample_projector
from .solver import Status, solve

MEMBER_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ProjectedLp:
    original: StandardFormLp
    projector: Projector
    projected: StandardFormLp


def project_lp(lp: StandardFormLp, T: Projector) -> ProjectedLp:
    """Replace ``Ax = b`` by ``TAx = Tb``; ``c`` and ``theta`` are carried over."""
    if T.m != lp.m:
        raise DimensionMismatch(f"projector expects {T.m} rows, LP has {lp.m}")
    prj = StandardFormLp(lp.c, apply(T, lp.A), apply(T, lp.b), lp.theta)
    return ProjectedLp(lp, T, prj)


def project_lp_with_budget(lp: StandardFormLp, T: Projector, theta: float) -> ProjectedLp:
    """As :func:`project_lp` with ``sum(x) <= theta``; ``theta = inf`` means no budget."""
    if not theta > 0:
        raise ValueError(f"theta must be strictly positive, got {theta}")
    if math.isinf(theta):
        return project_lp(lp.with_theta(None), T)
    return project_lp(lp.with_theta(theta), T)


@dataclass(frozen=True, eq=False)
class MembershipResult:
    """``certificate`` holds multipliers if ``member``, else a Farkas vector ``y``
    with ``y @ A >= 0`` and ``y @ target < 0`` (for hull queries ``A`` and
    ``target`` carry the extra all-ones row and 1)."""

    member: bool
    certificate: np.ndarray


def _membership(A, target):
    A = np.asarray(A, dtype=float)
    target = np.asarray(target, dtype=float)
    if A.ndim != 2 or target.shape != (A.shape[0],):
        raise DimensionMismatch(f"target of shape {target.shape} does not fit A of shape {A.shape}")
    res = solve(StandardFormLp(np.zeros(A.shape[1]), A, target))
    if res.status is Status.INFEASIBLE:
        return MembershipResult(False, res.farkas)
    return MembershipResult(True, res.x)


def in_cone(A, target) -> MembershipResult:
    """Decide ``target in cone(A)`` by phase 1 of the simplex method."""
    return _membership(A, target)


def in_conv_hull(A, target) -> MembershipResult:
    """Decide whether ``target`` is a convex combination of the columns of ``A``."""
    A = np.asarray(A, dtype=float)
    target = np.asarray(target, dtype=float)
    if A.ndim != 2 or target.shape != (A.shape[0],):
        raise DimensionMismatch(f"target of shape {target.shape} does not fit A of shape {A.shape}")
    return _membership(np.vstack([A, np.ones(A.shape[1])]), np.append(target, 1.0))


def a_norm(A, x) -> float:
    """``min sum(lam) s.t. A lam = x, lam >= 0``."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if x.shape != (A.shape[0],):
        raise DimensionMismatch(f"x of shape {x.shape} does not fit A of shape {A.shape}")
    res = solve(StandardFormLp(np.ones(A.shape[1]), A, x))
    if not res.optimal:
        raise NotInCone("x is not in the cone spanned by the columns of A")
    return res.objective


TRIAL_KINDS = ("cone", "hull", "feasibility", "infeasibility")


@dataclass(frozen=True)
class TrialRow:
    seed: int
    original_answer: bool
    projected_answer: bool
    k: int
    epsilon: float


def _trial_problem(kind, params, seed):
    """Build ``(A, target, decide)`` for one trial."""
    m, n = params["m"], params["n"]
    density = params.get("density", 1.0)
    if kind in ("feasibility", "infeasibility"):
        cfg = GenConfig(m, n, density, seed, kind == "feasibility")
        lp = gen_feasible(cfg)[0] if cfg.feasible else gen_infeasible(cfg)[0]
        return lp.A, lp.b, in_cone
    rng = np.random.default_rng(seed)
    A = rng.random((m, n))
    if kind == "cone":
        return A, rng.standard_normal(m), in_cone
    # hull: a point far outside the unit cube that contains every column
    direction = rng.standard_normal(m)
    direction /= np.linalg.norm(direction)
    radius = params.get("radius", 2.0 * math.sqrt(m))
    return A, 0.5 + radius * direction, in_conv_hull


def run_preservation_trials(
    kind: str,
    generator_params: dict,
    epsilon: float,
    trials: int,
    master_seed: int,
    k: Optional[int] = None,
    projector_kind=ProjectorKind.SPARSE,
    q: Optional[float] = None,
) -> list:
    """Per-trial original and projected membership answers.

    Each trial derives its own instance and projector seeds from
    ``master_seed`` and the trial index.
    """
    if kind not in TRIAL_KINDS:
        raise ValueError(f"kind must be one of {TRIAL_KINDS}, got {kind!r}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rows = []
    for t in range(trials):
        seed = derive_seed(master_seed, t)
        A, target, decide = _trial_problem(kind, generator_params, derive_seed(seed, 0))
        kk = k if k is not None else projected_dimension(A.shape[1], epsilon)
        T = sample_projector(projector_kind, kk, A.shape[0], derive_seed(seed, 1), q=q)
        original = decide(A, target).member
        projected = decide(apply(T, A), apply(T, target)).member
        rows.append(TrialRow(seed, original, projected, kk, epsilon))
    return rows


def preservation_trial(
    kind: str,
    generator_params: dict,
    epsilon: float,
    trials: int,
    master_seed: int,
    k: Optional[int] = None,
    projector_kind=ProjectorKind.SPARSE,
    q: Optional[float] = None,
    csv_path=None,
) -> float:
    """Fraction of trials where the projected answer equals the original one.

    Feasible instances stay feasible under any linear map, so the rate only
    measures how often infeasibility survives.  ``csv_path`` receives one
    row per trial.
    """
    rows = run_preservation_trials(
        kind, generator_params, epsilon, trials, master_seed, k, projector_kind, q
    )
    if csv_path is not None:
        write_trial_csv(rows, csv_path)
    return sum(r.original_answer == r.projected_answer for r in rows) / len(rows)


def write_trial_csv(rows, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["seed", "original_answer", "projected_answer", "k", "epsilon"])
        for r in rows:
            w.writerow([r.seed, str(r.original_answer).lower(), str(r.projected_answer).lower(), r.k, repr(r.epsilon)])
