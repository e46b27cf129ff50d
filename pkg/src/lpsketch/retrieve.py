"""Recovering an approximate solution of the original LP from a projected solve."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, InfeasibleProjection, UnboundedProjection
from .lp_model import (
    NormalizedLp,
    QualityMetrics,
    StandardFormLp,
    denormalize_solution,
    normalize,
    quality_metrics,
)
from .project import project_lp
from .sketch import Projector, ProjectorKind, derive_seed, projected_dimension, sample_projector
from .solver import SolveResult, Status, solve

COND_LIMIT = 1e12
DUAL_TOL = 1e-8


class Method(str, Enum):
    BASIS_ALG2 = "alg2"
    PSEUDOINVERSE = "pinv"


@dataclass(frozen=True, eq=False)
class RetrievalReport:
    """A retrieved point together with its quality against the original LP.

    ``flags`` may contain ``"singular_basis"`` (least-squares fallback in the
    basis method), ``"rank_deficient"`` (minimum-norm fallback in the
    pseudoinverse method) or ``"obj_absolute"``.  ``metrics`` is ``None``
    when no reference optimum was supplied.
    """

    x: np.ndarray
    method: Method
    basis_used: tuple
    metrics: Optional[QualityMetrics]
    dual_lift_feasible: Optional[bool] = None
    flags: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "method": self.method.value,
            "basis_used": list(self.basis_used),
            "metrics": None if self.metrics is None else self.metrics.to_dict(),
            "dual_lift_feasible": self.dual_lift_feasible,
            "flags": list(self.flags),
            "diagnostics": self.diagnostics,
        }


def dual_lift(T: Projector, y_T) -> np.ndarray:
    """``T.T @ y_T``: a feasible dual point of the original LP."""
    y_T = np.asarray(y_T, dtype=float)
    if y_T.shape != (T.k,):
        raise DimensionMismatch(f"y_T has shape {y_T.shape}, expected ({T.k},)")
    return T.entries.T @ y_T


def _metrics(lp, x, v_reference):
    if v_reference is None:
        return None, ()
    q = quality_metrics(lp, x, v_reference, float(lp.c @ x))
    return q, ("obj_absolute",) if q.obj_absolute else ()


def dual_slack_distances(lp: StandardFormLp, y_prox) -> np.ndarray:
    """Distance from ``y_prox`` to each hyperplane ``A_j . y = c_j``."""
    return (lp.c - lp.A.T @ y_prox) / np.linalg.norm(lp.A, axis=0)


def retrieve_basis_alg2(lp: StandardFormLp, y_prox, v_reference: Optional[float] = None) -> RetrievalReport:
    """Pick the ``m`` columns whose dual constraints are closest to ``y_prox``
    and solve ``A_B x_B = b`` on them.

    Ties in the distances go to the lower column index.  When ``A_B`` is
    numerically singular the system is solved in the least-squares sense
    and ``"singular_basis"`` is flagged.
    """
    y_prox = np.asarray(y_prox, dtype=float)
    if y_prox.shape != (lp.m,):
        raise DimensionMismatch(f"y_prox has shape {y_prox.shape}, expected ({lp.m},)")
    z = dual_slack_distances(lp, y_prox)
    order = np.argsort(z, kind="stable")
    B = np.sort(order[: lp.m])
    AB = lp.A[:, B]
    cond = float(np.linalg.cond(AB))
    flags = []
    if np.isfinite(cond) and cond <= COND_LIMIT:
        xB = np.linalg.solve(AB, lp.b)
    else:
        xB = np.linalg.lstsq(AB, lp.b, rcond=None)[0]
        flags.append("singular_basis")
    x = np.zeros(lp.n)
    x[B] = xB
    metrics, extra = _metrics(lp, x, v_reference)
    gap = float(z[order[lp.m]] - z[order[lp.m - 1]]) if lp.n > lp.m else float("inf")
    lifted_ok = bool(np.all(lp.A.T @ y_prox <= lp.c + DUAL_TOL))
    return RetrievalReport(
        x,
        Method.BASIS_ALG2,
        tuple(int(j) for j in B),
        metrics,
        lifted_ok,
        tuple(flags) + extra,
        {"condition": cond, "z_gap": gap},
    )


def retrieve_pseudoinverse(lp: StandardFormLp, projected_basis, v_reference: Optional[float] = None) -> RetrievalReport:
    """Solve ``A_H' A_H x_H = A_H' b`` on the columns ``H``; zero elsewhere.

    A singular normal matrix falls back to the minimum-norm least-squares
    solution and is flagged ``"rank_deficient"``.
    """
    H = np.array(sorted(set(int(j) for j in projected_basis)), dtype=int)
    if H.size == 0 or H.min() < 0 or H.max() >= lp.n:
        raise ValueError(f"basis must be a nonempty subset of 0..{lp.n - 1}")
    AH = lp.A[:, H]
    M = AH.T @ AH
    cond = float(np.linalg.cond(M))
    flags = []
    if np.isfinite(cond) and cond <= COND_LIMIT:
        xH = np.linalg.solve(M, AH.T @ lp.b)
    else:
        xH = np.linalg.lstsq(AH, lp.b, rcond=None)[0]
        flags.append("rank_deficient")
    x = np.zeros(lp.n)
    x[H] = xH
    metrics, extra = _metrics(lp, x, v_reference)
    return RetrievalReport(
        x, Method.PSEUDOINVERSE, tuple(int(j) for j in H), metrics, None, tuple(flags) + extra, {"condition": cond}
    )


@dataclass(frozen=True, eq=False)
class PipelineRun:
    """Everything produced by one project-solve-retrieve pass.

    ``projected_x`` is the raw projected optimum mapped back to the original
    scaling, before any retrieval.  Times are wall-clock seconds.
    """

    reports: dict
    projector: Projector
    projected: SolveResult
    projected_x: np.ndarray
    v_reference: Optional[float]
    k: int
    sample_time: float
    multiply_time: float
    solve_time: float
    retrieve_times: dict

    def prj_time(self, method=Method.PSEUDOINVERSE) -> float:
        return self.sample_time + self.multiply_time + self.solve_time + self.retrieve_times[Method(method)]


def run_pipeline(
    lp: StandardFormLp,
    epsilon: float,
    master_seed: int,
    methods=(Method.BASIS_ALG2, Method.PSEUDOINVERSE),
    k: Optional[int] = None,
    kind=ProjectorKind.SPARSE,
    q: Optional[float] = None,
    v_reference: Optional[float] = None,
    theta: Optional[float] = None,
) -> PipelineRun:
    """normalize, sample ``T``, project, solve, retrieve, denormalize.

    ``v_reference`` defaults to the optimum of the original LP, solved here
    if not supplied.  ``theta`` is a budget on the *normalized* variables.

    Raises
    ------
    InfeasibleProjection
        If the projected LP has no feasible point.
    """
    norm: NormalizedLp = normalize(lp)
    nlp = norm.lp.with_theta(theta)
    if v_reference is None:
        ref = solve(lp)
        v_reference = ref.objective if ref.optimal else None
    kk = k if k is not None else projected_dimension(lp.n, epsilon)

    t0 = time.perf_counter()
    T = sample_projector(kind, kk, lp.m, derive_seed(master_seed, 0), q=q)
    t1 = time.perf_counter()
    prj = project_lp(nlp, T)
    t2 = time.perf_counter()
    res = solve(prj.projected)
    t3 = time.perf_counter()
    if res.status is Status.INFEASIBLE:
        raise InfeasibleProjection(f"projected LP with k={kk} rows is infeasible")
    if res.status is Status.UNBOUNDED:
        raise UnboundedProjection(f"projected LP with k={kk} rows is unbounded")

    reports, times = {}, {}
    for method in map(Method, methods):
        s = time.perf_counter()
        if method is Method.BASIS_ALG2:
            y_prox = dual_lift(T, res.y[: T.k])
            rep = retrieve_basis_alg2(nlp, y_prox)
        else:
            H = [j for j in res.basis if j < lp.n]
            rep = retrieve_pseudoinverse(nlp, H)
        x = denormalize_solution(rep.x, norm)
        times[method] = time.perf_counter() - s
        metrics, extra = _metrics(lp, x, v_reference)
        diagnostics = dict(rep.diagnostics, k=kk, projector_seed=T.seed)
        reports[method] = RetrievalReport(
            x, method, rep.basis_used, metrics, rep.dual_lift_feasible, rep.flags + extra, diagnostics
        )
    return PipelineRun(
        reports,
        T,
        res,
        denormalize_solution(res.x, norm),
        v_reference,
        kk,
        t1 - t0,
        t2 - t1,
        t3 - t2,
        times,
    )


def full_pipeline(
    lp: StandardFormLp,
    epsilon: float,
    method=Method.PSEUDOINVERSE,
    master_seed: int = 0,
    **kwargs,
) -> RetrievalReport:
    """Deterministic given ``master_seed``; see :func:`run_pipeline` for options."""
    method = Method(method)
    return run_pipeline(lp, epsilon, master_seed, methods=(method,), **kwargs).reports[method]
