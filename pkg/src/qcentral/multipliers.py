"""Central multiplier coefficients b_d(z) and their cb-norm bookkeeping.

``b_d(z) = mu_d(|q|^z + |q|^{-z}) / mu_d(|q| + |q|^{-1})``.  Writing
``n = d + 1`` and using the geometric closed form of mu_d gives

    b_d(z) = |q|^{d(1-z)} (1 - |q|^{2nz}) (1 - q^2) / ((1 - |q|^{2z}) (1 - q^{2n}))

for ``Re z >= 0``; ``b_d`` is even in ``z``, which covers the other half of
the strip.  This form never overflows, unlike the raw Chebyshev values
(mu_d(2.5) leaves double range near d = 1020).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .qspecial import QParam

__all__ = [
    "MultiplierFamily",
    "CbBudget",
    "SummabilityReport",
    "Truncation",
    "b_coeff",
    "b_coeff_recurrence",
    "b_coeff_recurrence_table",
    "log_qdim",
    "log_abs_b",
    "cb_budget",
    "decay_rate",
    "limiting_ratio",
    "summability_report",
    "summability_boundary",
    "truncate_multiplier",
]


def _ratio_factor(n: int, z: complex, logq: float) -> complex:
    """(1 - |q|^{2nz}) / (1 - |q|^{2z}), with the z -> 0 limit n."""
    if z == 0:
        return complex(n)
    den = -_expm1(2.0 * z * logq)
    if abs(den) < 1e-300:
        return complex(n) if abs(cmath.exp(2.0 * n * z * logq) - 1) < 1e-12 else complex("nan")
    return -_expm1(2.0 * n * z * logq) / den


def _expm1(w: complex) -> complex:
    if w.imag == 0.0:
        return complex(math.expm1(w.real))
    # expm1 for complex w without cancellation near w = 0
    return complex(math.expm1(w.real) * math.cos(w.imag) - 2.0 * math.sin(w.imag / 2) ** 2,
                   math.exp(w.real) * math.sin(w.imag))


def b_coeff(q, z, d: int) -> complex:
    """Multiplier coefficient b_d(z) on the closed strip ``|Re z| <= 1``."""
    q = QParam.coerce(q)
    z = complex(z)
    if not -1.0 <= z.real <= 1.0:
        raise ValueError(f"Re(z) must lie in [-1, 1], got z={z}")
    if d < 0:
        raise ValueError("d must be non-negative")
    if z.real < 0 or (z.real == 0 and z.imag < 0):
        z = -z
    logq = math.log(q.absq)
    n = d + 1
    head = cmath.exp(d * (1.0 - z) * logq)
    fz = _ratio_factor(n, z, logq)
    f1 = -math.expm1(2.0 * logq) / -math.expm1(2.0 * n * logq)
    return head * fz * f1


def b_coeff_recurrence(q, z, d: int, dps: int | None = None) -> complex:
    """b_d(z) as a plain ratio of two Chebyshev recurrences (reference path).

    In doubles the rounding of ``|q|^z + |q|^{-z}`` is amplified by the
    conditioning of mu_d near 2; pass ``dps`` to run the whole thing,
    arguments included, in mpmath.
    """
    return complex(b_coeff_recurrence_table(q, z, d, dps)[d])


def b_coeff_recurrence_table(q, z, d_max: int, dps: int | None = None) -> np.ndarray:
    """``[b_0(z), ..., b_{d_max}(z)]`` from the raw recurrences."""
    q = QParam.coerce(q)
    z = complex(z)
    if dps is None:
        a = q.absq
        x, g = a**z + a ** (-z), q.gauge
        one, zero = 1.0, 0.0
    else:
        ctx = mpmath.mp.clone()
        ctx.dps = dps
        a = ctx.mpf(q.absq)
        zz = ctx.mpc(z.real, z.imag) if z.imag else ctx.mpf(z.real)
        x, g = a**zz + a ** (-zz), a + 1 / a
        one, zero = ctx.mpf(1), ctx.mpf(0)
    out = np.empty(d_max + 1, dtype=complex)
    num, den, prev_n, prev_d = one, one, zero, zero
    for d in range(d_max + 1):
        out[d] = complex(num / den)
        prev_n, num = num, x * num - prev_n
        prev_d, den = den, g * den - prev_d
    return out


def log_qdim(q, d: int) -> float:
    """log mu_d(|q| + |q|^{-1}) without forming the value."""
    q = QParam.coerce(q)
    logq = math.log(q.absq)
    n = d + 1
    # mu_d(gauge) = |q|^{-d} (1 - q^{2n}) / (1 - q^2)
    return -d * logq + math.log(-math.expm1(2 * n * logq)) - math.log(-math.expm1(2 * logq))


@dataclass(frozen=True)
class MultiplierFamily:
    """The sequence d -> b_d(z), optionally raised to a power."""

    q: QParam
    z: complex
    power: int = 1

    def __post_init__(self):
        object.__setattr__(self, "q", QParam.coerce(self.q))
        object.__setattr__(self, "z", complex(self.z))
        if not -1.0 < self.z.real < 1.0:
            raise ValueError(f"Re(z) must lie in (-1, 1), got z={self.z}")
        if self.power < 1:
            raise ValueError("power must be positive")

    @property
    def kind(self) -> str:
        return "raw" if self.power == 1 else ("cubed" if self.power == 3 else f"power{self.power}")

    def __getitem__(self, d: int) -> complex:
        return b_coeff(self.q, self.z, d) ** self.power

    def coefficients(self, d_max: int) -> np.ndarray:
        return np.array([self[d] for d in range(d_max + 1)])


@dataclass(frozen=True)
class CbBudget:
    """Upper bound ``mu_d(gauge)^2`` for the cb-norm of the spin-d/2 projection."""

    d: int
    proj_bound: float
    term: float


def cb_budget(q, t: float, d: int, power: int = 3) -> CbBudget:
    q = QParam.coerce(q)
    log_proj = 2.0 * log_qdim(q, d)
    b = abs(b_coeff(q, t, d))
    log_term = power * math.log(b) + log_proj if b > 0 else -math.inf
    return CbBudget(d=d, proj_bound=_safe_exp(log_proj), term=_safe_exp(log_term))


def _safe_exp(x: float) -> float:
    return math.inf if x > 709.0 else math.exp(x)


def decay_rate(q, z) -> float:
    """Asymptotic ratio ``|b_{d+1}(z) / b_d(z)| -> |q|^{1 - Re z}``."""
    q = QParam.coerce(q)
    z = complex(z)
    if not 0.0 < z.real < 1.0:
        raise ValueError(f"decay law needs 0 < Re(z) < 1, got z={z}")
    return q.absq ** (1.0 - z.real)


def limiting_ratio(q, t: float, power: int) -> float:
    """Ratio-test limit of ``|b_d(t)|^power mu_d(gauge)^2``: |q|^{power(1-t) - 2}."""
    q = QParam.coerce(q)
    exponent = power * (1.0 - t) - 2.0
    if abs(exponent) < 1e-12:
        return 1.0
    return q.absq**exponent


@dataclass(frozen=True)
class SummabilityReport:
    q: float
    t_or_z: float
    power: int
    d_max: int
    terms: list[float] = field(repr=False)
    partial_sums: list[float] = field(repr=False)
    limiting_ratio: float
    converges: bool

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "t_or_z": self.t_or_z,
            "power": self.power,
            "d_max": self.d_max,
            "terms": list(self.terms),
            "partial_sums": list(self.partial_sums),
            "limiting_ratio": self.limiting_ratio,
            "converges": self.converges,
        }


def log_abs_b(q, t: float, d: int) -> float:
    """log b_d(t) for real t in (0, 1], stable where b_d itself underflows."""
    q = QParam.coerce(q)
    logq = math.log(q.absq)
    n = d + 1
    ratio = math.log(-math.expm1(2.0 * n * t * logq)) - math.log(-math.expm1(2.0 * t * logq))
    f1 = math.log(-math.expm1(2.0 * logq)) - math.log(-math.expm1(2.0 * n * logq))
    return d * (1.0 - t) * logq + ratio + f1


def _log_terms(q: QParam, t: float, power: int, d_max: int) -> np.ndarray:
    out = np.empty(d_max + 1)
    for d in range(d_max + 1):
        out[d] = power * log_abs_b(q, t, d) + 2.0 * log_qdim(q, d)
    return out


def summability_report(q, t: float, power: int = 3, d_max: int = 200) -> SummabilityReport:
    """Terms ``|b_d(t)|^power mu_d(gauge)^2`` with partial sums and the ratio test."""
    q = QParam.coerce(q)
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    if power < 1:
        raise ValueError("power must be positive")
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    terms = [_safe_exp(x) for x in _log_terms(q, t, power, d_max)]
    partial = list(np.cumsum(terms))
    ratio = limiting_ratio(q, t, power)
    return SummabilityReport(
        q=q.q,
        t_or_z=float(t),
        power=power,
        d_max=d_max,
        terms=terms,
        partial_sums=[float(x) for x in partial],
        limiting_ratio=ratio,
        converges=ratio < 1.0,
    )


def summability_boundary(q, power: int = 3, tol: float = 1e-6) -> float:
    """Bisect ``limiting_ratio(q, t, power) = 1`` over t in (0, 1)."""
    lo, hi = 0.0, 1.0
    # ratio > 1 past the boundary, < 1 before it
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if limiting_ratio(q, mid, power) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Truncation:
    d_cut: int
    cb_error_bound: float
    eps: float


def _majorant(q: QParam, t: float, power: int, start: int) -> float:
    # for d >= start: b_d(t) <= |q|^{d(1-t)} (1-q^2) / ((1-q^{2t})(1-q^{2(start+1)}))
    # and mu_d(gauge) <= |q|^{-d} / (1 - q^2), so terms <= K rho^d
    a = q.absq
    logq = math.log(a)
    A = -math.expm1(2 * logq) / (-math.expm1(2 * t * logq) * -math.expm1(2 * (start + 1) * logq))
    log_rho = (power * (1.0 - t) - 2.0) * logq
    log_k = power * math.log(A) - 2.0 * math.log(-math.expm1(2 * logq))
    return math.exp(log_k + start * log_rho) / -math.expm1(log_rho)


def truncate_multiplier(q, t: float, power: int = 3, eps: float = 1e-6) -> Truncation:
    """Smallest cutoff whose discarded cb-mass is certified below ``eps``.

    The discarded mass ``sum_{d > d_cut} |b_d(t)|^power mu_d(gauge)^2`` is the
    exact sum up to a far index ``M`` plus a geometric majorant past ``M``.
    """
    q = QParam.coerce(q)
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if limiting_ratio(q, t, power) >= 1.0:
        raise ValueError(f"multiplier is not cb-summable at q={q.q}, t={t}, power={power}")
    far = 64
    while _majorant(q, t, power, far + 1) > 1e-3 * eps:
        far *= 2
        if far > 10**7:
            raise ValueError("tail decays too slowly to certify")
    logs = _log_terms(q, t, power, far)
    terms = np.exp(logs)
    beyond = _majorant(q, t, power, far + 1)
    # tails[k] = sum_{d > k} terms[d] + beyond, widened by a floating-point
    # allowance for exp of the logs and the summation itself
    slack = 1.0 + np.finfo(float).eps * (far + 8 + float(np.abs(logs).max()))
    tails = (np.concatenate([np.cumsum(terms[::-1])[::-1][1:], [0.0]]) + beyond) * slack
    ok = np.nonzero(tails < eps)[0]
    d_cut = int(ok[0])
    return Truncation(d_cut=d_cut, cb_error_bound=float(tails[d_cut]), eps=eps)
