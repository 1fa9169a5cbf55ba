"""Special functions: dilated Chebyshev polynomials, q-Pochhammer symbols,
q-binomial coefficients and dilated continuous q-Hermite polynomials.

Everything here evaluates in double precision by default.  The recurrences
accept an optional ``dps`` argument that switches to mpmath at the given
number of decimal digits; the result is converted back to a Python complex.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import mpmath
import numpy as np

__all__ = [
    "QParam",
    "chebyshev_mu",
    "chebyshev_mu_closed",
    "chebyshev_mu_table",
    "q_pochhammer",
    "q_binomial",
    "q_binomial_rows",
    "q_hermite",
    "hermite_branch",
]


@dataclass(frozen=True)
class QParam:
    """Deformation parameter ``q`` with ``0 < |q| < 1``."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not math.isfinite(q) or q == 0.0 or abs(q) >= 1.0:
            raise ValueError(f"q must satisfy 0 < |q| < 1, got {self.q!r}")
        object.__setattr__(self, "q", q)

    @property
    def absq(self) -> float:
        return abs(self.q)

    @property
    def gauge(self) -> float:
        """|q| + 1/|q|, the quantum dimension of the fundamental representation."""
        return self.absq + 1.0 / self.absq

    @property
    def sign(self) -> int:
        return 1 if self.q > 0 else -1

    @classmethod
    def coerce(cls, q: "QParam | float") -> "QParam":
        return q if isinstance(q, QParam) else cls(q)


def _is_exact_int(x) -> bool:
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


def chebyshev_mu(d: int, x, dps: int | None = None):
    """Evaluate the dilated Chebyshev polynomial of the second kind.

    Uses ``mu_0 = 1``, ``mu_1 = x`` and ``x mu_k = mu_{k-1} + mu_{k+1}``.
    An integer ``x`` is evaluated in exact integer arithmetic.  ``x`` may also
    be a numpy array, in which case the recurrence runs elementwise.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if dps is not None:
        with mpmath.workdps(dps):
            xm = mpmath.mpmathify(x)
            prev, cur = mpmath.mpf(0), mpmath.mpf(1)
            for _ in range(d):
                prev, cur = cur, xm * cur - prev
            return complex(cur)
    if _is_exact_int(x):
        x = int(x)
        prev, cur = 0, 1
        for _ in range(d):
            prev, cur = cur, x * cur - prev
        return cur
    prev = np.zeros_like(x) if isinstance(x, np.ndarray) else 0.0
    cur = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    for _ in range(d):
        prev, cur = cur, x * cur - prev
    return cur


def chebyshev_mu_table(d_max: int, x) -> np.ndarray:
    """Return ``[mu_0(x), ..., mu_{d_max}(x)]`` for a scalar ``x``."""
    x = complex(x) if isinstance(x, complex) else x
    out = np.empty(d_max + 1, dtype=complex if isinstance(x, complex) else float)
    prev, cur = 0.0, 1.0
    for d in range(d_max + 1):
        out[d] = cur
        prev, cur = cur, x * cur - prev
    return out


def chebyshev_mu_closed(d: int, y):
    """mu_d(y + 1/y) through the geometric closed form; needs ``y != +-1``."""
    n = d + 1
    return (y**n - y ** (-n)) / (y - 1.0 / y)


def q_pochhammer(x, q: float, k: int):
    """(x; q)_k = (1 - x)(1 - xq)...(1 - xq^{k-1}), with (x; q)_0 = 1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1.0
    factor = x
    for _ in range(k):
        out = out * (1 - factor)
        factor = factor * q
    return out


def q_binomial(n: int, k: int, q: float) -> float:
    """Gaussian binomial coefficient ``(q;q)_n / ((q;q)_k (q;q)_{n-k})``."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        raise ValueError(f"q-binomial needs k <= n, got n={n}, k={k}")
    # product over min(k, n-k) factors makes [n k] == [n n-k] bit for bit
    k = min(k, n - k)
    out = 1.0
    for j in range(1, k + 1):
        out *= (1.0 - q ** (n - k + j)) / (1.0 - q**j)
    return out


def q_binomial_rows(n_max: int, q: float) -> list[np.ndarray]:
    """Rows ``[n 0]_q .. [n n]_q`` for n = 0..n_max via the q-Pascal rule."""
    rows = [np.ones(1)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = np.empty(n + 1)
        row[0] = row[n] = 1.0
        k = np.arange(1, n)
        # [n k] = [n-1 k-1] + q^k [n-1 k]
        row[1:n] = prev[:-1] + q**k * prev[1:]
        rows.append(row)
    return rows


def hermite_branch(x) -> complex:
    """Root ``y`` of ``y + 1/y = x`` with ``|y| >= 1``."""
    x = complex(x)
    y = (x + np.sqrt(x * x - 4.0)) / 2.0
    if abs(y) < 1.0:
        y = 1.0 / y
    return y


def q_hermite(n: int, x, q: float, method: str = "recurrence", dps: int | None = None):
    """Dilated continuous q-Hermite polynomial H_n(x; q).

    ``method="recurrence"`` runs ``x H_n = H_{n+1} + (1 - q^n) H_{n-1}``;
    ``method="sum"`` evaluates ``sum_k [n k]_q y^{n-2k}`` on the branch
    returned by :func:`hermite_branch`.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if method == "sum":
        y = hermite_branch(x)
        total = 0j
        for k in range(n + 1):
            total += q_binomial(n, k, q) * y ** (n - 2 * k)
        return total
    if method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    if dps is not None:
        with mpmath.workdps(dps):
            xm, qm = mpmath.mpmathify(x), mpmath.mpf(q)
            prev, cur = mpmath.mpf(0), mpmath.mpf(1)
            for j in range(n):
                prev, cur = cur, xm * cur - (1 - qm**j) * prev
            return complex(cur)
    prev, cur = 0.0, 1.0
    for j in range(n):
        prev, cur = cur, x * cur - (1.0 - q**j) * prev
    return cur
