"""Truncation scheduler for degree-filtered free-product smoothing.

For the smoothing ``T_r = sum_d r^d P_d`` on a free product, the discarded
tail past degree n has cb-norm at most ``4 n r^n / (1 - r)^2``.  With
``r = 1 - 1/sqrt(N)`` this becomes ``4 N^2 (1 - 1/sqrt(N))^N``.  Replacing
each factor by an eps-close finite-rank multiplier costs at most
``sum_{d=1}^N 4 d 2^d eps`` on the kept degrees.

``eps`` leaves double range once N passes ~1000 (delta below ~5e-8), so
it and the block error are carried as mpmath numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

__all__ = ["FreeProdSchedule", "tail_bound", "block_weight", "plan", "MAX_N"]

MAX_N = 10**7


def tail_bound(n: int, r: float) -> float:
    """4 n r^n / (1 - r)^2, evaluated in log space."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    if r == 0.0:
        return 0.0
    return math.exp(math.log(4 * n) + n * math.log(r) - 2.0 * math.log1p(-r))


def _scan_values(ns: np.ndarray) -> np.ndarray:
    # 4 N^2 (1 - 1/sqrt N)^N for N >= 2
    return np.exp(np.log(4.0) + 2.0 * np.log(ns) + ns * np.log1p(-1.0 / np.sqrt(ns)))


def block_weight(n: int) -> int:
    """sum_{d=1}^n 4 d 2^d, exactly."""
    return 4 * ((n - 1) * 2 ** (n + 1) + 2)


@dataclass(frozen=True)
class FreeProdSchedule:
    delta: float
    N: int
    r: float
    eps: mpmath.mpf
    tail_bound: float
    block_error: mpmath.mpf

    @property
    def total_bound(self) -> float:
        return float(self.tail_bound + self.block_error)

    def block_cb_bound(self, d: int) -> mpmath.mpf:
        """cb bound (2d + 1)(1 + eps)^d of the approximating block on degree d."""
        return (2 * d + 1) * (1 + self.eps) ** d

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "N": self.N,
            "r": self.r,
            "eps": float(self.eps) if self.eps > mpmath.mpf("1e-300") else mpmath.nstr(self.eps, 17),
            "log10_eps": float(mpmath.log10(self.eps)),
            "tail_bound": self.tail_bound,
            "block_error": float(self.block_error),
            "total_bound": self.total_bound,
        }


def plan(delta: float) -> FreeProdSchedule:
    """Smallest N >= 2 with ``4 N^2 (1 - 1/sqrt N)^N < delta``, and an eps.

    The tail and the block error are each kept below ``delta``; eps is set
    so that the block error is exactly ``delta / 2``.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    start, chunk = 2, 4096
    N = None
    while start <= MAX_N:
        ns = np.arange(start, min(start + chunk, MAX_N + 1), dtype=float)
        hit = np.nonzero(_scan_values(ns) < delta)[0]
        if hit.size:
            N = int(ns[hit[0]])
            break
        start += chunk
        chunk *= 2
    if N is None:
        raise ValueError(f"no N <= {MAX_N} reaches delta = {delta}")
    r = 1.0 - 1.0 / math.sqrt(N)
    tail = tail_bound(N, r)
    with mpmath.workdps(30):
        weight = mpmath.mpf(block_weight(N))
        eps = mpmath.mpf(delta) / (2 * weight)
        block = weight * eps
    sched = FreeProdSchedule(delta=delta, N=N, r=r, eps=eps, tail_bound=tail, block_error=block)
    if not (tail < delta and block < delta and eps > 0):
        raise AssertionError(f"schedule failed its own bounds: {sched}")
    return sched
