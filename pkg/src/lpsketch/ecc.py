"""Real-valued error-correcting code decoded by l1 minimization.

A message ``w`` of ``m`` bits is sent as ``z = Q w`` (``Q`` is ``n x m``).
The receiver gets ``z + x`` with ``x`` sparse, computes ``b = A (z + x) = A x``
for a parity matrix with ``A Q = 0``, recovers ``x`` as the minimum-l1
solution of ``A x = b`` and rounds ``(Q'Q)^{-1} Q' (z_bar - x)``.
The l1 problem can optionally be solved after projecting ``A x = b``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import BadLength, DimensionMismatch, NonAscii, RankFailure, SolveFailure
from .lp_model import StandardFormLp
from .sketch import Projector, ProjectorKind, apply, derive_seed, projected_dimension, sample_projector
from .solver import solve

REDUNDANCY = 1.1
ECC_Q = 0.01
# (m, n) -> k pairs where the projected dimension is fixed by hand rather than by the k formula
REFERENCE_K = {(233, 256): 61, (421, 463): 67}


def char_widths(text: str, padded: bool = True) -> list:
    """Bit width of each character: 7 when padded, else its binary length."""
    for ch in text:
        if ord(ch) > 127:
            raise NonAscii(f"character {ch!r} is not 7-bit ASCII")
    if padded:
        return [7] * len(text)
    return [max(1, ord(ch).bit_length()) for ch in text]


def text_to_bits(s: str, padded: bool = True) -> np.ndarray:
    """Big-endian bits of each character.

    With ``padded=False`` leading zeros are dropped (``' '`` takes 6 bits);
    decoding such a string then needs the per-character widths.
    """
    bits = []
    for ch, w in zip(s, char_widths(s, padded)):
        bits.extend(int(c) for c in format(ord(ch), f"0{w}b"))
    return np.array(bits, dtype=np.int8)


def bits_to_text(bits, widths=None) -> str:
    bits = [int(b) for b in np.asarray(bits).ravel()]
    if widths is None:
        if len(bits) % 7:
            raise BadLength(f"{len(bits)} bits is not a multiple of 7")
        widths = [7] * (len(bits) // 7)
    if sum(widths) != len(bits):
        raise BadLength(f"widths sum to {sum(widths)} but there are {len(bits)} bits")
    out, pos = [], 0
    for w in widths:
        out.append(chr(int("".join(map(str, bits[pos:pos + w])), 2)))
        pos += w
    return "".join(out)


@dataclass(frozen=True, eq=False)
class EccCode:
    m: int
    n: int
    Q: np.ndarray
    A: np.ndarray
    seed: int

    @property
    def parity_rank(self) -> int:
        return int(np.linalg.matrix_rank(self.A))


@dataclass(frozen=True)
class NoiseModel:
    delta: float = 0.5
    rate: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not 0 <= self.rate <= 1:
            raise ValueError(f"rate must lie in [0, 1], got {self.rate}")


def default_codeword_length(m: int) -> int:
    return int(round(REDUNDANCY * m))


def make_code(m: int, n: int, seed: int) -> EccCode:
    """Gaussian ``Q`` (``n x m``) and an ``m x n`` parity matrix with ``A Q = 0``.

    ``A = G N'`` where the columns of ``N`` span the left null space of ``Q``
    and ``G`` is Gaussian, so ``rank(A) <= n - m``.
    """
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    for _ in range(3):
        Q = rng.standard_normal((n, m))
        sv = np.linalg.svd(Q, compute_uv=False)
        if sv[-1] > 1e-9 * sv[0]:
            break
    else:
        raise RankFailure(f"could not sample a rank-{m} encoding matrix")
    N = scipy.linalg.null_space(Q.T)
    G = rng.standard_normal((m, N.shape[1]))
    return EccCode(m, n, Q, G @ N.T, seed)


def encode(code: EccCode, w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.shape != (code.m,):
        raise DimensionMismatch(f"message has {w.size} bits, code expects {code.m}")
    return code.Q @ w


def add_noise(z, noise: NoiseModel) -> np.ndarray:
    """Perturb each entry by ``U[-delta, delta]`` with probability ``rate``."""
    z = np.asarray(z, dtype=float)
    rng = np.random.default_rng(noise.seed)
    hit = rng.random(z.shape) < noise.rate
    return z + np.where(hit, rng.uniform(-noise.delta, noise.delta, z.shape), 0.0)


@dataclass
class DecodeDiagnostics:
    l1_norm: float
    nonzeros: int
    solve_time: float
    rows: int
    rank: int
    clamped: int
    objective: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def decode(code: EccCode, z_bar, projector: Optional[Projector] = None):
    """Return ``(w, error, diagnostics)``.

    The l1 problem is solved in standard form with ``x = x+ - x-`` and
    ``min sum(x+ + x-)``; a projector replaces ``A x = b`` by ``TA x = Tb``.
    Values outside ``[-0.5, 1.5]`` before rounding are clamped and counted.
    """
    z_bar = np.asarray(z_bar, dtype=float)
    if z_bar.shape != (code.n,):
        raise DimensionMismatch(f"received word has length {z_bar.size}, expected {code.n}")
    A = code.A
    b = A @ z_bar
    if projector is not None:
        A, b = apply(projector, A), apply(projector, b)
    lp = StandardFormLp(np.ones(2 * code.n), np.hstack([A, -A]), b)
    t0 = time.perf_counter()
    res = solve(lp)
    elapsed = time.perf_counter() - t0
    if not res.optimal:
        raise SolveFailure(f"l1 decoding LP ended with status {res.status.value}")
    x = res.x[: code.n] - res.x[code.n:]
    zp = z_bar - x
    w_real = np.linalg.solve(code.Q.T @ code.Q, code.Q.T @ zp)
    clamped = int(np.count_nonzero((w_real < -0.5) | (w_real > 1.5)))
    w = np.clip(np.rint(w_real), 0, 1).astype(np.int8)
    diag = DecodeDiagnostics(
        l1_norm=float(np.abs(x).sum()),
        nonzeros=int(np.count_nonzero(np.abs(x) > 1e-9)),
        solve_time=elapsed,
        rows=A.shape[0],
        rank=int(np.linalg.matrix_rank(A)),
        clamped=clamped,
        objective=res.objective,
    )
    return w, x, diag


@dataclass
class EccReport:
    text: str
    m: int
    n: int
    k: int
    corrupted: int
    recovered_text: str
    recovered_text_projected: str
    bit_errors: int
    bit_errors_projected: int
    diagnostics: dict = field(default_factory=dict)

    @property
    def perfect(self) -> bool:
        return self.bit_errors == 0 and self.bit_errors_projected == 0

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["perfect"] = self.perfect
        return d


def run_ecc_demo(
    text: str,
    noise: NoiseModel = NoiseModel(),
    k: Optional[int] = None,
    epsilon: Optional[float] = None,
    seed: int = 0,
    q: float = ECC_Q,
    n: Optional[int] = None,
    padded: bool = False,
) -> EccReport:
    """Encode ``text``, corrupt it, decode with and without projection.

    ``n`` defaults to ``round(1.1 m)``.  ``k`` defaults to the hand-picked
    value for the two reference message sizes, otherwise to the k formula
    at ``epsilon`` (0.3 if unset).  The code and projector seeds derive
    from ``seed``; ``noise.seed`` drives the channel.
    """
    if not text:
        raise BadLength("cannot encode an empty text")
    widths = char_widths(text, padded)
    w = text_to_bits(text, padded)
    m = w.size
    n = default_codeword_length(m) if n is None else n
    if k is None:
        if epsilon is None and (m, n) in REFERENCE_K:
            k = REFERENCE_K[(m, n)]
        else:
            k = projected_dimension(n, 0.3 if epsilon is None else epsilon)
    code = make_code(m, n, derive_seed(seed, 0))
    z = encode(code, w)
    z_bar = add_noise(z, noise)
    T = sample_projector(ProjectorKind.SPARSE, k, m, derive_seed(seed, 1), q=q)

    w0, _, d0 = decode(code, z_bar)
    w1, _, d1 = decode(code, z_bar, T)
    return EccReport(
        text=text,
        m=m,
        n=n,
        k=k,
        corrupted=int(np.count_nonzero(z_bar != z)),
        recovered_text=bits_to_text(w0, widths),
        recovered_text_projected=bits_to_text(w1, widths),
        bit_errors=int(np.count_nonzero(w0 != w)),
        bit_errors_projected=int(np.count_nonzero(w1 != w)),
        diagnostics={"original": d0.to_dict(), "projected": d1.to_dict(), "parity_rank": code.parity_rank},
    )
