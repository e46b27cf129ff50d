"""Random feasible and infeasible LP instances with known witnesses."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInstance
from .lp_model import StandardFormLp

MAX_RESAMPLES = 10


@dataclass(frozen=True)
class GenConfig:
    m: int
    n: int
    density: float = 1.0
    seed: int = 0
    feasible: bool = True

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise ValueError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")
        if not 0 < self.density <= 1:
            raise ValueError(f"density must lie in (0, 1], got {self.density}")

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _sample_matrix(rng, m, n, density):
    for _ in range(MAX_RESAMPLES):
        A = rng.random((m, n))
        if density < 1:
            A *= rng.random((m, n)) < density
        if (A != 0).any(axis=1).all() and (A != 0).any(axis=0).all():
            return A
    raise DegenerateInstance(
        f"could not sample a {m}x{n} matrix at density {density} without zero rows or columns"
    )


def gen_feasible(cfg: GenConfig):
    """Instance with ``b = A x`` for a planted ``x`` uniform on ``[0, 1]^n``.

    ``A`` has uniform ``[0, 1]`` entries kept with probability ``density``
    and ``c`` is all ones.  Returns ``(lp, planted_x)``.
    """
    if not cfg.feasible:
        raise ValueError("gen_feasible needs cfg.feasible = True")
    rng = np.random.default_rng(cfg.seed)
    A = _sample_matrix(rng, cfg.m, cfg.n, cfg.density)
    x = rng.random(cfg.n)
    return StandardFormLp(np.ones(cfg.n), A, A @ x), x


def gen_infeasible(cfg: GenConfig):
    """Instance with a planted Farkas certificate ``y``.

    ``y`` is uniform on ``[0.1, 1]^m`` so ``y A >= 0`` for the nonnegative
    ``A``, and ``b = -y`` gives ``b.y < 0``.  Returns ``(lp, y)``.
    """
    if cfg.feasible:
        raise ValueError("gen_infeasible needs cfg.feasible = False")
    rng = np.random.default_rng(cfg.seed)
    A = _sample_matrix(rng, cfg.m, cfg.n, cfg.density)
    y = rng.uniform(0.1, 1.0, cfg.m)
    return StandardFormLp(np.ones(cfg.n), A, -y), y


def generate(cfg: GenConfig):
    return gen_feasible(cfg) if cfg.feasible else gen_infeasible(cfg)
