"""Standard-form LP container, unit-norm scaling and solution-quality metrics.

An instance is ``min c.x  s.t.  A x = b, x >= 0`` with a dense ``A``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, ZeroColumn, ZeroRhs

UNIT_TOL = 1e-12


def _frozen(a, ndim):
    arr = np.array(a, dtype=float, copy=True)
    if arr.ndim != ndim:
        raise DimensionMismatch(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StandardFormLp:
    """The triple ``(c, A, b)`` plus an optional budget ``theta`` on ``sum(x)``."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    theta: Optional[float] = None

    def __post_init__(self):
        A = _frozen(self.A, 2)
        c = _frozen(self.c, 1)
        b = _frozen(self.b, 1)
        m, n = A.shape
        if m < 1 or n < 1:
            raise DimensionMismatch(f"A must have at least one row and column, got {A.shape}")
        if c.shape != (n,):
            raise DimensionMismatch(f"c has length {c.size}, expected {n}")
        if b.shape != (m,):
            raise DimensionMismatch(f"b has length {b.size}, expected {m}")
        if self.theta is not None and not self.theta > 0:
            raise ValueError(f"theta must be strictly positive, got {self.theta}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "b", b)
        if self.theta is not None:
            object.__setattr__(self, "theta", float(self.theta))

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def with_theta(self, theta: Optional[float]) -> "StandardFormLp":
        return StandardFormLp(self.c, self.A, self.b, theta)

    def to_dict(self) -> dict:
        d = {
            "m": self.m,
            "n": self.n,
            "c": self.c.tolist(),
            "A": self.A.tolist(),
            "b": self.b.tolist(),
        }
        if self.theta is not None:
            d["theta"] = self.theta
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "StandardFormLp":
        lp = cls(d["c"], d["A"], d["b"], d.get("theta"))
        if "m" in d and d["m"] != lp.m or "n" in d and d["n"] != lp.n:
            raise DimensionMismatch(
                f"declared size ({d.get('m')}, {d.get('n')}) does not match data {lp.A.shape}"
            )
        return lp


def save_lp(lp: StandardFormLp, path, **extra) -> None:
    # json writes floats with repr(), the shortest string that round-trips exactly
    doc = lp.to_dict()
    doc.update(extra)
    Path(path).write_text(json.dumps(doc))


def load_lp(path) -> StandardFormLp:
    return StandardFormLp.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True, eq=False)
class NormalizedLp:
    """A rescaled instance whose columns of ``A`` and ``b`` have unit norm.

    ``c`` is rescaled to ``c_j / ||A_j||`` and then to unit norm, so optimal
    solutions of the scaled problem map back to optimal solutions of the
    original one through :func:`denormalize_solution`.  ``cost_scale`` maps
    objective values back: ``v(original) = rhs_scale * cost_scale * v(scaled)``.
    """

    lp: StandardFormLp
    column_scales: np.ndarray
    rhs_scale: float
    cost_scale: float = 1.0


def normalize(lp: StandardFormLp) -> NormalizedLp:
    rhs_scale = float(np.linalg.norm(lp.b))
    if rhs_scale == 0.0:
        raise ZeroRhs("b is the zero vector; it cannot be scaled to unit norm")
    col = np.linalg.norm(lp.A, axis=0)
    zero = np.flatnonzero(col == 0.0)
    if zero.size:
        raise ZeroColumn(int(zero[0]))
    A = lp.A / col
    b = lp.b / rhs_scale
    c = lp.c / col
    cost_scale = float(np.linalg.norm(c))
    if cost_scale > 0:
        c = c / cost_scale
    else:
        cost_scale = 1.0
    theta = lp.theta
    return NormalizedLp(StandardFormLp(c, A, b, theta), _frozen(col, 1), rhs_scale, cost_scale)


def denormalize_solution(x_tilde, norm: NormalizedLp) -> np.ndarray:
    """Map a solution of the scaled LP back: ``x_j = ||b|| x~_j / ||A_j||``."""
    x_tilde = np.asarray(x_tilde, dtype=float)
    if x_tilde.shape != norm.column_scales.shape:
        raise DimensionMismatch(
            f"x has shape {x_tilde.shape}, expected {norm.column_scales.shape}"
        )
    return norm.rhs_scale * x_tilde / norm.column_scales


@dataclass(frozen=True)
class QualityMetrics:
    """Retrieval quality: residual of ``Ax=b``, negative mass, optimality gap.

    ``obj_absolute`` is set when the reference value is zero, in which case
    ``obj`` holds the absolute rather than the relative gap.
    """

    feas: float
    neg: float
    obj: float
    obj_absolute: bool = field(default=False)

    def to_dict(self) -> dict:
        return {"feas": self.feas, "neg": self.neg, "obj": self.obj, "obj_absolute": self.obj_absolute}


def quality_metrics(lp: StandardFormLp, x, v_reference: float, v_candidate: float) -> QualityMetrics:
    x = np.asarray(x, dtype=float)
    if x.shape != (lp.n,):
        raise DimensionMismatch(f"x has shape {x.shape}, expected ({lp.n},)")
    b1 = float(np.abs(lp.b).sum())
    resid = float(np.abs(lp.A @ x - lp.b).sum())
    feas = resid / b1 if b1 > 0 else resid
    x1 = float(np.abs(x).sum())
    neg = float(np.abs(x[x < 0]).sum()) / x1 if x1 > 0 else 0.0
    gap = abs(v_reference - v_candidate)
    if v_reference != 0:
        return QualityMetrics(feas, neg, gap / abs(v_reference))
    return QualityMetrics(feas, neg, gap, obj_absolute=True)

