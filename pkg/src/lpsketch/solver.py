"""Dense two-phase revised simplex for standard-form LPs.

The solver keeps an explicit basis inverse, updated by elementary row
operations and refactorized periodically.  Pricing is Dantzig's rule;
after a run of degenerate pivots it switches to Bland's rule for the rest
of the phase, which guarantees termination.

Rows that are linearly dependent on the others are detected after phase 1
(an artificial variable that cannot be pivoted out) and dropped, so rank
deficient systems such as projected LPs with more rows than the original
are handled.  Their dual values are reported as zero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import NumericalFailure, TooLarge
from .lp_model import StandardFormLp

FEAS_TOL = 1e-8
PIVOT_TOL = 1e-9
COST_TOL = 1e-9
REFACTOR_EVERY = 100


class Status(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Outcome of a solve.

    ``x``, ``y``, ``basis`` and ``objective`` are set only when the status is
    optimal.  For infeasible problems ``farkas`` holds a vector ``f`` with
    ``f @ A >= 0`` and ``f @ b < 0``.  ``iterations`` counts pivots over
    both phases.
    """

    status: Status
    x: Optional[np.ndarray] = None
    y: Optional[np.ndarray] = None
    basis: Optional[tuple] = None
    objective: Optional[float] = None
    farkas: Optional[np.ndarray] = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def to_dict(self) -> dict:
        def lst(v):
            return None if v is None else np.asarray(v).tolist()

        return {
            "status": self.status.value,
            "objective": self.objective,
            "x": lst(self.x),
            "y": lst(self.y),
            "basis": None if self.basis is None else list(self.basis),
        }


class _Simplex:
    """Working state for one call; not shared between calls."""

    def __init__(self, A, b, basis, max_iter, bland_after):
        self.A = A
        self.b = b
        self.m = A.shape[0]
        self.basis = np.array(basis, dtype=int)
        self.max_iter = max_iter
        self.bland_after = bland_after
        self.iterations = 0
        self.refactor()

    def refactor(self):
        B = self.A[:, self.basis]
        try:
            self.Binv = np.linalg.inv(B)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure("basis matrix became singular") from exc
        self.xB = self.Binv @ self.b
        self.xB[(self.xB < 0) & (self.xB > -FEAS_TOL)] = 0.0
        self.since_refactor = 0

    def pivot(self, r, j, alpha):
        piv = alpha[r]
        row = self.Binv[r] / piv
        self.Binv -= np.outer(alpha, row)
        self.Binv[r] = row
        theta = self.xB[r] / piv
        self.xB -= theta * alpha
        self.xB[r] = theta
        self.xB[(self.xB < 0) & (self.xB > -FEAS_TOL)] = 0.0
        self.basis[r] = j
        self.iterations += 1
        self.since_refactor += 1
        if self.since_refactor >= REFACTOR_EVERY:
            self.refactor()

    def duals(self, cost):
        return cost[self.basis] @ self.Binv

    def run(self, cost, eligible):
        """Minimize ``cost`` from the current basis.

        Returns ``"optimal"`` or ``("unbounded", j)`` where ``j`` is the
        entering column with no blocking row.
        """
        degenerate_run = 0
        bland = False
        cscale = max(1.0, float(np.abs(cost).max()))
        while True:
            if self.iterations >= self.max_iter:
                raise NumericalFailure(
                    f"simplex iteration cap of {self.max_iter} reached"
                )
            y = self.duals(cost)
            d = cost - y @ self.A
            d[self.basis] = 0.0
            d[~eligible] = 0.0
            candidates = np.flatnonzero(d < -COST_TOL * cscale)
            if candidates.size == 0:
                return "optimal"
            j = int(candidates[0]) if bland else int(candidates[np.argmin(d[candidates])])
            alpha = self.Binv @ self.A[:, j]
            pos = np.flatnonzero(alpha > PIVOT_TOL)
            if pos.size == 0:
                return ("unbounded", j)
            ratios = self.xB[pos] / alpha[pos]
            tmin = ratios.min()
            ties = pos[ratios <= tmin + 1e-12 * max(1.0, tmin)]
            if bland:
                r = int(ties[np.argmin(self.basis[ties])])
            else:
                r = int(ties[np.argmax(alpha[ties])])
            if tmin <= 1e-12:
                degenerate_run += 1
                if degenerate_run >= self.bland_after:
                    bland = True
            else:
                degenerate_run = 0
            self.pivot(r, j, alpha)


def _solve_arrays(c, A, b):
    m, n = A.shape
    sign = np.where(b < 0, -1.0, 1.0)
    A1 = np.hstack([A * sign[:, None], np.eye(m)])
    b1 = b * sign
    max_iter = 50 * (m + n)
    sx = _Simplex(A1, b1, np.arange(n, n + m), max_iter, 10 * m)

    # phase 1
    cost1 = np.concatenate([np.zeros(n), np.ones(m)])
    structural = np.zeros(n + m, dtype=bool)
    structural[:n] = True
    sx.run(cost1, structural)
    sx.refactor()
    infeas = float(sx.xB[sx.basis >= n].sum())
    bscale = 1.0 + float(np.abs(b).sum())
    if infeas > FEAS_TOL * bscale:
        yph = sx.duals(cost1)
        return SolveResult(Status.INFEASIBLE, farkas=-sign * yph, iterations=sx.iterations)

    # drive artificials out of the basis; rows where that fails are redundant
    redundant = []
    ascale = max(1.0, float(np.abs(A).max()))
    for r in range(m):
        if sx.basis[r] < n:
            continue
        row = sx.Binv[r] @ A1[:, :n]
        row[sx.basis[sx.basis < n]] = 0.0
        j = int(np.argmax(np.abs(row)))
        if abs(row[j]) > 1e-9 * ascale:
            alpha = sx.Binv @ A1[:, j]
            sx.xB[r] = 0.0
            sx.pivot(r, j, alpha)
        else:
            redundant.append(r)
    keep_rows = np.ones(m, dtype=bool)
    if redundant:
        keep_rows[redundant] = False
        keep_pos = [r for r in range(m) if keep_rows[r]]
        basis = sx.basis[keep_pos]
        A1 = A1[keep_rows][:, :n]
        iters = sx.iterations
        sx = _Simplex(A1, b1[keep_rows], basis, max_iter, 10 * m)
        sx.iterations = iters
        cost2 = c.copy()
        eligible = np.ones(n, dtype=bool)
    else:
        sx.refactor()
        cost2 = np.concatenate([c, np.zeros(m)])
        eligible = structural

    # phase 2
    out = sx.run(cost2, eligible)
    if out != "optimal":
        return SolveResult(Status.UNBOUNDED, iterations=sx.iterations)

    Bmat = sx.A[:, sx.basis]
    xB = np.linalg.solve(Bmat, sx.b)
    yk = np.linalg.solve(Bmat.T, cost2[sx.basis])
    x = np.zeros(n)
    on = sx.basis < n
    x[sx.basis[on]] = xB[on]
    x[(x < 0) & (x > -FEAS_TOL)] = 0.0
    y = np.zeros(m)
    y[keep_rows] = yk * sign[keep_rows]
    basis = tuple(sorted(int(j) for j in sx.basis if j < n))
    return SolveResult(
        Status.OPTIMAL,
        x=x,
        y=y,
        basis=basis,
        objective=float(c @ x),
        iterations=sx.iterations,
    )


def solve(lp: StandardFormLp) -> SolveResult:
    """Solve ``min c.x s.t. Ax = b, x >= 0``.

    A budget carried on ``lp.theta`` is honoured (see :func:`solve_with_budget`).
    Deterministic: no randomness enters pivoting.
    """
    if lp.theta is not None:
        return solve_with_budget(lp, lp.theta)
    return _solve_arrays(np.array(lp.c), np.array(lp.A), np.array(lp.b))


def solve_with_budget(lp: StandardFormLp, theta: float) -> SolveResult:
    """Solve with the extra constraint ``sum(x) <= theta``.

    The budget row is appended last with its slack as the last column, so
    ``x`` keeps the original ``n`` variables.  ``y`` has ``m + 1`` entries
    (the last one is the budget dual) and ``basis`` may contain the slack
    index ``n``.
    """
    if not theta > 0:
        raise ValueError(f"theta must be strictly positive, got {theta}")
    m, n = lp.A.shape
    if not np.isfinite(theta):
        return _solve_arrays(np.array(lp.c), np.array(lp.A), np.array(lp.b))
    A = np.zeros((m + 1, n + 1))
    A[:m, :n] = lp.A
    A[m, :] = 1.0
    b = np.append(lp.b, theta)
    c = np.append(lp.c, 0.0)
    res = _solve_arrays(c, A, b)
    if not res.optimal:
        farkas = res.farkas
        return SolveResult(res.status, farkas=farkas, iterations=res.iterations)
    return SolveResult(
        Status.OPTIMAL,
        x=res.x[:n],
        y=res.y,
        basis=res.basis,
        objective=res.objective,
        iterations=res.iterations,
    )


def brute_force_optimum(lp: StandardFormLp, tol: float = 1e-9) -> SolveResult:
    """Enumerate every basic solution; a test oracle for :func:`solve`.

    Unboundedness is decided by enumerating the extreme rays of
    ``{d >= 0 : A d = 0, sum(d) = 1}`` and checking for ``c.d < 0``.
    Limited to ``n <= 12`` and ``m <= 6``.
    """
    A, b, c = np.array(lp.A), np.array(lp.b), np.array(lp.c)
    if lp.theta is not None:
        m, n = A.shape
        A = np.vstack([np.hstack([A, np.zeros((m, 1))]), np.ones((1, n + 1))])
        b = np.append(b, lp.theta)
        c = np.append(c, 0.0)
    m, n = A.shape
    if n > 12 or m > 6:
        raise TooLarge(f"brute force limited to m <= 6, n <= 12; got m={m}, n={n}")

    A, b, consistent = _independent_rows(A, b)
    if not consistent:
        return SolveResult(Status.INFEASIBLE)
    r = A.shape[0]
    best = None
    for cols in itertools.combinations(range(n), r):
        B = A[:, cols]
        if r and np.linalg.matrix_rank(B) < r:
            continue
        xB = np.linalg.solve(B, b) if r else np.zeros(0)
        if xB.min(initial=0.0) < -tol:
            continue
        x = np.zeros(n)
        x[list(cols)] = xB
        val = float(c @ x)
        if best is None or val < best[0] - 1e-12:
            best = (val, x, cols)
    if best is None:
        return SolveResult(Status.INFEASIBLE)

    R = np.vstack([A, np.ones((1, n))])
    rhs = np.append(np.zeros(r), 1.0)
    for cols in itertools.combinations(range(n), r + 1):
        B = R[:, cols]
        if np.linalg.matrix_rank(B) < r + 1:
            continue
        d = np.linalg.solve(B, rhs)
        if d.min() < -tol:
            continue
        if float(c[list(cols)] @ d) < -tol:
            return SolveResult(Status.UNBOUNDED)

    val, x, cols = best
    return SolveResult(Status.OPTIMAL, x=x, basis=tuple(cols), objective=val)


def _independent_rows(A, b):
    """Drop dependent rows of ``[A b]``; report whether ``Ax = b`` is consistent."""
    rank = np.linalg.matrix_rank(A) if A.size else 0
    if rank == A.shape[0]:
        return A, b, True
    keep = []
    for i in range(A.shape[0]):
        trial = keep + [i]
        if np.linalg.matrix_rank(A[trial]) == len(trial):
            keep.append(i)
    Ak, bk = A[keep], b[keep]
    sol = np.linalg.lstsq(Ak, bk, rcond=None)[0]
    consistent = np.allclose(A @ sol, b, atol=1e-9 * (1 + np.abs(b).max()))
    return Ak, bk, consistent
