"""Random projectors: sampling, application and concentration statistics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import BadEpsilon, BadSparsity, DimensionMismatch

ACHLIOPTAS_Q = 1.0 / 6.0


class ProjectorKind(str, Enum):
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"
    SPARSE = "sparse"
    GAUSSIAN_ORTHOGONAL = "gaussian-orthogonal"


def derive_seed(master_seed: int, *index: int) -> int:
    """Counter-based child seed: depends only on ``master_seed`` and ``index``.

    Trials seeded this way are reproducible regardless of execution order.
    """
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(i) for i in index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True, eq=False)
class Projector:
    """A ``k x m`` random matrix regenerated from ``(kind, q, k, m, seed)``.

    Entries are already scaled so that ``E ||T y||^2 = ||y||^2``.
    """

    kind: ProjectorKind
    k: int
    m: int
    seed: int
    q: Optional[float] = None
    entries: np.ndarray = field(default=None, repr=False)

    @property
    def shape(self):
        return (self.k, self.m)

    @property
    def T(self) -> np.ndarray:
        return self.entries

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "q": self.q, "k": self.k, "m": self.m, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "Projector":
        return sample_projector(d["kind"], d["k"], d["m"], d["seed"], q=d.get("q"))


def projected_dimension(n: int, epsilon: float) -> int:
    """Row count ``ceil(1.8 / eps^2 * ln n) + 1`` used for the LP experiments."""
    if not 0 < epsilon < 1:
        raise BadEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return math.ceil(1.8 / epsilon**2 * math.log(n)) + 1


def sample_projector(kind, k: int, m: int, seed: int, q: Optional[float] = None) -> Projector:
    """Sample a projector; identical arguments give bit-identical entries.

    ``q`` is the probability of each of ``+1`` and ``-1`` for the sparse
    kind (default 1/6); the remaining mass goes to 0.  Sparse entries are
    scaled by ``1/sqrt(2 q k)`` so every kind has entry variance ``1/k``.
    """
    kind = ProjectorKind(kind)
    if k < 1 or m < 1:
        raise ValueError(f"projector dimensions must be positive, got k={k}, m={m}")
    rng = np.random.default_rng(int(seed))
    if kind is ProjectorKind.GAUSSIAN:
        T = rng.standard_normal((k, m)) / math.sqrt(k)
        q = None
    elif kind is ProjectorKind.RADEMACHER:
        T = (2.0 * rng.integers(0, 2, size=(k, m)) - 1.0) / math.sqrt(k)
        q = None
    elif kind is ProjectorKind.SPARSE:
        q = ACHLIOPTAS_Q if q is None else float(q)
        if not 0 < q <= 0.5:
            raise BadSparsity(f"sparsity q must lie in (0, 1/2], got {q}")
        u = rng.random((k, m))
        T = np.where(u < q, 1.0, np.where(u < 2 * q, -1.0, 0.0)) / math.sqrt(2 * q * k)
    else:
        if k > m:
            raise ValueError(f"an orthogonal projector needs k <= m, got k={k}, m={m}")
        G = rng.standard_normal((m, k))
        Qm, R = np.linalg.qr(G)
        Qm *= np.sign(np.diag(R))
        T = math.sqrt(m / k) * Qm.T
        q = None
    T.setflags(write=False)
    return Projector(kind, int(k), int(m), int(seed), q, T)


def apply(T: Projector, M) -> np.ndarray:
    """Return ``T @ M`` for a vector or a matrix with ``T.m`` rows."""
    M = np.asarray(M, dtype=float)
    if M.shape[0] != T.m:
        raise DimensionMismatch(f"operand has {M.shape[0]} rows, projector expects {T.m}")
    return T.entries @ M


def extended_projector(T: Projector, h: int) -> np.ndarray:
    """Block matrix ``[[I_h, 0], [0, T]]`` that leaves the first ``h`` rows alone."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    E = np.zeros((h + T.k, h + T.m))
    E[:h, :h] = np.eye(h)
    E[h:, h:] = T.entries
    return E


@dataclass(frozen=True)
class DistortionStats:
    """Empirical distortion of a projector over a point set.

    ``fraction_within`` counts pairs with ``(1-eps)|u-v| <= |Tu-Tv| <= (1+eps)|u-v|``;
    ``squared_fraction_within`` is the same test on squared distances.
    ``inner_product_max_violation`` is the largest
    ``|<Tx,Ty> - <x,y>| / (|x| |y|)`` and ``inner_product_violation_fraction``
    the share of pairs where it exceeds ``eps``.
    """

    epsilon: float
    n_pairs: int
    fraction_within: float
    max_relative_error: float
    inner_product_max_violation: float
    squared_fraction_within: float = 1.0
    inner_product_violation_fraction: float = 0.0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def distortion_stats(T: Projector, points: Sequence, epsilon: float) -> DistortionStats:
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != T.m:
        raise DimensionMismatch(f"points must have shape (N, {T.m}), got {P.shape}")
    if P.shape[0] < 2:
        raise ValueError("need at least two points")
    TP = P @ T.entries.T
    i, j = np.triu_indices(P.shape[0], k=1)

    dist = np.linalg.norm(P[i] - P[j], axis=1)
    pdist = np.linalg.norm(TP[i] - TP[j], axis=1)
    live = dist > 0
    ratio = np.where(live, pdist / np.where(live, dist, 1.0), 1.0)
    within = (ratio >= 1 - epsilon) & (ratio <= 1 + epsilon)
    sq = ratio**2
    sq_within = (sq >= 1 - epsilon) & (sq <= 1 + epsilon)

    # inner products are symmetric, so unordered pairs cover the ordered ones
    norms = np.linalg.norm(P, axis=1)
    denom = norms[i] * norms[j]
    ok = denom > 0
    dev = np.abs(np.einsum("ij,ij->i", TP[i], TP[j]) - np.einsum("ij,ij->i", P[i], P[j]))
    rel = dev[ok] / denom[ok]
    return DistortionStats(
        epsilon=float(epsilon),
        n_pairs=int(i.size),
        fraction_within=float(within.mean()),
        max_relative_error=float(np.abs(ratio - 1).max()),
        inner_product_max_violation=float(rel.max()) if rel.size else 0.0,
        squared_fraction_within=float(sq_within.mean()),
        inner_product_violation_fraction=float((rel > epsilon).mean()) if rel.size else 0.0,
    )
