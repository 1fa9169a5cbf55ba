"""Diagnostics of the matrix F defining O_F^+ / U_F^+."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FMatrixProfile",
    "Verdict",
    "profile",
    "noninjectivity_check",
    "sd_generators",
    "subgroup_member",
    "q_from_trace",
]

_COND_LIMIT = 1e12
_TOL = 1e-10


def q_from_trace(trace: float) -> float:
    """Root in (0, 1] of ``q + 1/q = trace`` (trace >= 2)."""
    if trace < 2.0:
        if trace > 2.0 - 1e-12:
            return 1.0
        raise ValueError(f"q + 1/q = {trace} has no real solution")
    return 2.0 / (trace + math.sqrt(max(trace * trace - 4.0, 0.0)))


@dataclass(frozen=True)
class FMatrixProfile:
    F: np.ndarray  # rescaled so that Tr(FF*) = Tr((FF*)^{-1})
    F_input: np.ndarray
    scale: float
    trace_ffstar: float
    trace_inv: float
    normalized_input: bool
    q_param: float
    Q: np.ndarray
    orthogonal_case: str
    signed_q: float | None

    @property
    def N(self) -> int:
        return self.F.shape[0]

    @property
    def normalized(self) -> bool:
        return abs(self.trace_ffstar - self.trace_inv) <= _TOL * max(1.0, self.trace_ffstar)

    @property
    def advisory(self) -> str:
        if self.orthogonal_case == "no":
            return "F conj(F) is not a real multiple of I: O_F^+ decomposes as a nontrivial free product"
        return "F conj(F) is a real multiple of I: O_F^+ is monoidally equivalent to SU_q(2)"

    def to_dict(self) -> dict:
        verdict = noninjectivity_check(self)
        return {
            "N": self.N,
            "scale": self.scale,
            "normalized_input": self.normalized_input,
            "trace_ffstar": self.trace_ffstar,
            "trace_inv": self.trace_inv,
            "q_param": self.q_param,
            "signed_q": self.signed_q,
            "orthogonal_case": self.orthogonal_case,
            "advisory": self.advisory,
            "Q_eigenvalues": [float(x) for x in np.linalg.eigvalsh(self.Q)],
            "sd_generators": sd_generators(self),
            "noninjective": verdict.noninjective,
            "noninjectivity_lhs": verdict.lhs,
            "noninjectivity_rhs": verdict.rhs,
        }


def _classify(F: np.ndarray) -> str:
    prod = F @ F.conj()
    n = F.shape[0]
    c = np.trace(prod) / n
    scale = max(np.abs(prod).max(), 1e-300)
    if abs(c.imag) > _TOL * scale or np.abs(prod - c * np.eye(n)).max() > _TOL * scale:
        return "no"
    return "plus" if c.real > 0 else "minus"


def profile(F) -> FMatrixProfile:
    """Rescale F to trace balance and extract q, Q and the orthogonal case."""
    F0 = np.asarray(F, dtype=complex)
    if F0.ndim != 2 or F0.shape[0] != F0.shape[1] or F0.shape[0] < 1:
        raise ValueError("F must be a square matrix")
    cond = np.linalg.cond(F0)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise ValueError(f"F is singular or ill-conditioned (cond = {cond:.3g})")
    ff = F0 @ F0.conj().T
    tr = float(np.trace(ff).real)
    tr_inv = float(np.trace(np.linalg.inv(ff)).real)
    normalized_input = abs(tr - tr_inv) <= _TOL * max(1.0, tr)
    # lambda^2 Tr(FF*) = lambda^{-2} Tr((FF*)^{-1})
    lam = (tr_inv / tr) ** 0.25
    F1 = lam * F0
    Q = F1 @ F1.conj().T
    Q = 0.5 * (Q + Q.conj().T)
    t = float(np.trace(Q).real)
    t_inv = float(np.trace(np.linalg.inv(Q)).real)
    q = q_from_trace(t)
    case = _classify(F1)
    signed = None if case == "no" else (-q if case == "plus" else q)
    return FMatrixProfile(
        F=F1,
        F_input=F0,
        scale=lam,
        trace_ffstar=t,
        trace_inv=t_inv,
        normalized_input=normalized_input,
        q_param=q,
        Q=Q,
        orthogonal_case=case,
        signed_q=signed,
    )


@dataclass(frozen=True)
class Verdict:
    noninjective: bool
    lhs: int
    rhs: float


def noninjectivity_check(p: FMatrixProfile) -> Verdict:
    """``N^2 > Tr(FF*) + 2`` (strict) certifies that L(FO_F) is not injective.

    A false verdict is inconclusive.
    """
    if not p.normalized:
        raise ValueError("profile is not trace balanced")
    lhs = p.N * p.N
    rhs = p.trace_ffstar + 2.0
    return Verdict(noninjective=lhs - rhs > _TOL * lhs, lhs=lhs, rhs=rhs)


def _dedup(values, tol: float = _TOL) -> list[float]:
    out: list[float] = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > tol * max(abs(v), 1.0):
            out.append(v)
    return out


def sd_generators(p: FMatrixProfile) -> list[float]:
    """Eigenvalues of Q (x) Q other than 1, deduplicated and sorted."""
    if not p.normalized:
        raise ValueError("profile is not trace balanced")
    lam = np.linalg.eigvalsh(p.Q)
    prods = [float(a * b) for a in lam for b in lam]
    return [v for v in _dedup(prods) if abs(v - 1.0) > _TOL]


def subgroup_member(generators, target: float, max_exponent: int) -> bool:
    """Bounded search for ``target = prod g_i^{e_i}`` with ``|e_i| <= max_exponent``."""
    gens = [float(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    if target <= 0 or any(g <= 0 for g in gens):
        raise ValueError("generators and target must be positive")
    logs = np.log(gens)
    goal = math.log(target)
    exps = range(-max_exponent, max_exponent + 1)
    for e in itertools.product(exps, repeat=len(gens)):
        if abs(float(np.dot(e, logs)) - goal) < 1e-9:
            return True
    return False
