"""Finite-truncation model of C(SU_q(2)) on l2(N) (x) l2(Z).

The first tensor leg carries the Toeplitz generator alpha,
``alpha e_n = sqrt(1 - q^{2n}) e_{n-1}``, and gamma acts by
``gamma e_n (x) e_k = q^n e_n (x) e_{k-1}``.  Truncating l2(N) to
``n_tr`` basis vectors (and l2(Z) to a window of sites) only corrupts the
last few rows of a product of generators; every operator here records how
many rows at the boundary are unreliable.

The Jacobi operator ``T = q^{-1} alpha + q alpha*`` has the explicit
eigenvectors ``eta_z`` whose coefficients are dilated q-Hermite values; the
bilinear pairings of ``mu_d(T) eta_z`` against ``eta_z`` give the
holomorphic family of central functionals ``theta_z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .qspecial import QParam, chebyshev_mu, q_binomial_rows, q_pochhammer

__all__ = [
    "BandedOperator",
    "TensorOperator",
    "EtaVector",
    "ThetaFunctional",
    "build_alpha_toeplitz",
    "build_jacobi",
    "jacobi_spectrum",
    "rho_alpha",
    "rho_gamma",
    "conditional_expectation",
    "toeplitz_residual",
    "unitarity_residual",
    "eta_coefficients",
    "eta_tail_bound",
    "decay_length",
    "eta_vector",
    "eigen_residual",
    "theta_pair",
    "TAIL_TOL",
]

# l2-tail threshold (sum of |p_n|^2) that fixes the decay length of eta_z
TAIL_TOL = 1e-13
# extra rows kept between the decay length plus band growth and n_tr
THETA_MARGIN = 8


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class BandedOperator:
    """Truncated operator on l2(N).

    ``bandwidth`` bounds ``|i - j|`` over nonzero entries and ``guard``
    counts the trailing rows that may differ from the untruncated operator.
    """

    entries: np.ndarray
    bandwidth: int
    guard: int

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError("entries must be a square matrix")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def valid_rows(self) -> range:
        return range(0, max(self.dim - self.guard, 0))

    def band_leak(self) -> float:
        """Largest modulus of an entry outside the declared band."""
        i, j = np.indices(self.entries.shape)
        outside = np.abs(i - j) > self.bandwidth
        return float(np.abs(self.entries[outside]).max(initial=0.0))

    @property
    def H(self) -> "BandedOperator":
        return BandedOperator(self.entries.conj().T, self.bandwidth, self.guard)

    def __matmul__(self, other: "BandedOperator") -> "BandedOperator":
        return BandedOperator(
            self.entries @ other.entries,
            self.bandwidth + other.bandwidth,
            self.guard + other.guard,
        )

    def __add__(self, other: "BandedOperator") -> "BandedOperator":
        return BandedOperator(
            self.entries + other.entries,
            max(self.bandwidth, other.bandwidth),
            max(self.guard, other.guard),
        )

    def __sub__(self, other: "BandedOperator") -> "BandedOperator":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "BandedOperator":
        return BandedOperator(scalar * self.entries, self.bandwidth, self.guard)

    def identity_like(self) -> "BandedOperator":
        return BandedOperator(np.eye(self.dim), 0, 0)


@dataclass(frozen=True)
class TensorOperator:
    """Truncated operator on l2(N) (x) l2(window).

    Basis vector ``e_n (x) e_k`` sits at flat index ``n * width + (k - lo)``.
    ``reach`` counts generator applications; rows within ``reach`` of either
    truncation boundary are unreliable.
    """

    entries: np.ndarray
    n_tr: int
    window: tuple[int, int]
    reach: int

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        lo, hi = self.window
        if hi < lo:
            raise ValueError("window must satisfy lo <= hi")
        if self.entries.shape != (self.n_tr * self.width,) * 2:
            raise ValueError("entries shape does not match n_tr and window")

    @property
    def width(self) -> int:
        lo, hi = self.window
        return hi - lo + 1

    def index(self, n: int, k: int) -> int:
        return n * self.width + (k - self.window[0])

    @property
    def valid_mask(self) -> np.ndarray:
        lo, hi = self.window
        n = np.repeat(np.arange(self.n_tr), self.width)
        k = np.tile(np.arange(lo, hi + 1), self.n_tr)
        r = self.reach
        return (n < self.n_tr - r) & (k >= lo + r) & (k <= hi - r)

    @property
    def H(self) -> "TensorOperator":
        return TensorOperator(self.entries.conj().T, self.n_tr, self.window, self.reach)

    def _check(self, other: "TensorOperator"):
        if (self.n_tr, self.window) != (other.n_tr, other.window):
            raise ValueError("operators live on different truncations")

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        return TensorOperator(
            self.entries @ other.entries, self.n_tr, self.window, self.reach + other.reach
        )

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        return TensorOperator(
            self.entries + other.entries, self.n_tr, self.window, max(self.reach, other.reach)
        )

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "TensorOperator":
        return TensorOperator(scalar * self.entries, self.n_tr, self.window, self.reach)


def _alpha_weights(absq: float, n_tr: int) -> np.ndarray:
    # weight of alpha e_n -> e_{n-1} for n = 1 .. n_tr-1
    n = np.arange(1, n_tr)
    return np.sqrt(-np.expm1(2.0 * n * math.log(absq)))


def _check_ntr(n_tr: int):
    if n_tr < 4:
        raise ValueError(f"truncation size must be >= 4, got {n_tr}")


def build_alpha_toeplitz(q, n_tr: int) -> BandedOperator:
    """Truncation of rho_q^0(alpha): e_n -> sqrt(1 - q^{2n}) e_{n-1}."""
    q = QParam.coerce(q)
    _check_ntr(n_tr)
    a = np.zeros((n_tr, n_tr))
    idx = np.arange(1, n_tr)
    a[idx - 1, idx] = _alpha_weights(q.absq, n_tr)
    return BandedOperator(a, 1, 1)


def build_jacobi(q, n_tr: int) -> BandedOperator:
    """Truncation of rho_q^0(q^{-1} alpha + q alpha*), built with |q|."""
    q = QParam.coerce(q)
    alpha = build_alpha_toeplitz(q, n_tr)
    return (1.0 / q.absq) * alpha + q.absq * alpha.H


def jacobi_spectrum(q, n_tr: int) -> np.ndarray:
    """Eigenvalues of the truncated Jacobi matrix, ascending.

    The matrix is diagonally similar (gauge ``D_n = |q|^n``) to the real
    symmetric tridiagonal matrix with off-diagonals ``sqrt(1 - q^{2(n+1)})``,
    which is what gets handed to the solver.
    """
    q = QParam.coerce(q)
    _check_ntr(n_tr)
    off = _alpha_weights(q.absq, n_tr)
    return eigvalsh_tridiagonal(np.zeros(n_tr), off)


def rho_alpha(q, n_tr: int, window: tuple[int, int]) -> TensorOperator:
    """rho_q(alpha) on the truncated tensor space; identity on the second leg."""
    q = QParam.coerce(q)
    alpha = build_alpha_toeplitz(q, n_tr)
    width = window[1] - window[0] + 1
    return TensorOperator(np.kron(alpha.entries, np.eye(width)), n_tr, tuple(window), 1)


def rho_gamma(q, n_tr: int, window: tuple[int, int]) -> TensorOperator:
    """rho_q(gamma): e_n (x) e_k -> q^n e_n (x) e_{k-1} (signed q)."""
    q = QParam.coerce(q)
    _check_ntr(n_tr)
    lo, hi = window
    width = hi - lo + 1
    shift = np.eye(width, k=1)  # e_k -> e_{k-1}
    diag = np.diag(q.q ** np.arange(n_tr))
    return TensorOperator(np.kron(diag, shift), n_tr, (lo, hi), 1)


def conditional_expectation(op: TensorOperator) -> BandedOperator:
    """Compress a tensor operator to the e_0 slot of the second leg, V* op V."""
    lo, hi = op.window
    if not lo <= 0 <= hi:
        raise ValueError(f"window {op.window} does not contain 0")
    rows = np.arange(op.n_tr) * op.width + (0 - lo)
    block = op.entries[np.ix_(rows, rows)]
    n = np.arange(op.n_tr)
    nz = np.abs(block) > 0
    bw = int(np.abs(n[:, None] - n[None, :])[nz].max(initial=0))
    return BandedOperator(block, bw, op.reach)


def toeplitz_residual(q, n_tr: int) -> float:
    """Max-norm of ``alpha alpha* - q^2 alpha* alpha - (1 - q^2)`` on valid rows."""
    q = QParam.coerce(q)
    a = build_alpha_toeplitz(q, n_tr)
    lhs = a @ a.H - (q.q**2) * (a.H @ a)
    rows = lhs.valid_rows
    target = (1.0 - q.q**2) * np.eye(n_tr)
    return float(np.abs(lhs.entries[rows.start : rows.stop] - target[rows.start : rows.stop]).max())


def unitarity_residual(q, n_tr: int, window: tuple[int, int] = (-4, 4)) -> float:
    """Max-norm of ``alpha* alpha + gamma* gamma - 1`` on valid tensor rows."""
    a = rho_alpha(q, n_tr, window)
    g = rho_gamma(q, n_tr, window)
    lhs = a.H @ a + g.H @ g
    mask = lhs.valid_mask
    err = lhs.entries - np.eye(lhs.entries.shape[0])
    return float(np.abs(err[mask]).max())


@dataclass(frozen=True)
class EtaVector:
    """Truncated eigenvector ``eta_z = sum_n p_n(z) e_n``."""

    q: QParam
    z: complex
    coeffs: np.ndarray
    c_z: complex
    tail_bound: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _freeze(self.coeffs))

    @property
    def n_tr(self) -> int:
        return len(self.coeffs)

    @property
    def eigenvalue(self) -> complex:
        a = self.q.absq
        return a**self.z + a ** (-self.z)


def _check_strip(z: complex):
    if not -1.0 < z.real < 1.0:
        raise ValueError(f"Re(z) must lie in (-1, 1), got z={z}")


def eta_coefficients(q, z, n_tr: int) -> np.ndarray:
    """p_n(z) for n < n_tr from the q-Hermite sum.

    ``p_n(z) = |q|^n (q^2;q^2)_n^{-1/2} sum_k [n k]_{q^2} |q|^{z(n-2k)}``;
    the powers are combined in log space so nothing overflows.
    """
    q = QParam.coerce(q)
    z = complex(z)
    a2 = q.absq**2
    logq = math.log(q.absq)
    rows = q_binomial_rows(n_tr - 1, a2)
    out = np.empty(n_tr, dtype=complex)
    poch = 1.0
    for n, row in enumerate(rows):
        if n > 0:
            poch *= -math.expm1(2 * n * logq)
        k = np.arange(n + 1)
        powers = np.exp(logq * (n + z * (n - 2 * k)))
        out[n] = np.dot(row, powers) / math.sqrt(poch)
    if z.imag == 0.0:
        out = out.real.astype(complex)
    return out


def _qq_infinity_lower(absq: float) -> float:
    # (q^2; q^2)_inf >= (q^2; q^2)_M (1 - q^{2M} / (1 - q^2)), M = 64
    m = 64
    a2 = absq**2
    head = q_pochhammer(a2, a2, m)
    return head * (1.0 - a2**m / (1.0 - a2))


def _tail_majorant(q: QParam, z: complex):
    # |p_n(z)| <= K * rate^n, plus the polynomial-free constant used below
    s = abs(z.real)
    absq = q.absq
    D = _qq_infinity_lower(absq)
    rate = absq ** (1.0 - s)
    if s > 0:
        # sum_j [n j]_{q^2} q^{2sj} <= sum_j q^{2sj}/(q^2;q^2)_j = 1/(q^{2s}; q^2)_inf
        euler = 1.0 / q_pochhammer(absq ** (2 * s), absq**2, 400)
    else:
        euler = math.inf
    return D, rate, euler


def eta_tail_bound(q, z, n: int) -> float:
    """Rigorous majorant of ``sum_{m >= n} |p_m(z)|^2``.

    Uses ``|p_m(z)| <= D^{-1/2} |q|^{m(1-|s|)} min(E, (m+1)/D)`` where
    ``s = Re z``, ``D`` is a lower bound for ``(q^2;q^2)_inf`` and ``E``
    the Euler-sum constant ``1/(|q|^{2|s|}; q^2)_inf``.
    """
    q = QParam.coerce(q)
    z = complex(z)
    D, rate, euler = _tail_majorant(q, z)
    rho = rate**2
    geometric = (euler**2 / D) * rho**n / (1.0 - rho) if math.isfinite(euler) else math.inf
    # polynomial branch: sum_{m>=n} (m+1)^2 rho^m / D^3, summed until negligible
    total, m = 0.0, n
    term = (m + 1) ** 2 * rho**m
    while True:
        total += term
        m += 1
        term = (m + 1) ** 2 * rho**m
        if term == 0.0:
            # underflow: the remainder is below the smallest subnormal
            break
        if m > n + 10 and term < 1e-18 * total:
            # remaining terms decay at least geometrically with ratio below rho'
            ratio = ((m + 2) / (m + 1)) ** 2 * rho
            total += term / (1.0 - ratio)
            break
    polynomial = total / D**3
    return float(min(geometric, polynomial))


def decay_length(q, z, tol: float = TAIL_TOL) -> int:
    """Smallest n whose tail majorant falls below ``tol``."""
    q = QParam.coerce(q)
    z = complex(z)
    _check_strip(z)
    lo, hi = 0, 1
    while eta_tail_bound(q, z, hi) >= tol:
        lo, hi = hi, hi * 2
        if hi > 10**7:
            raise ValueError("eta_z decays too slowly for any practical truncation")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eta_tail_bound(q, z, mid) < tol:
            hi = mid
        else:
            lo = mid
    return hi


def eta_vector(q, z, n_tr: int) -> EtaVector:
    """Truncated eigenvector of the Jacobi operator for parameter ``z``."""
    q = QParam.coerce(q)
    z = complex(z)
    _check_strip(z)
    if n_tr < 1:
        raise ValueError("n_tr must be positive")
    coeffs = eta_coefficients(q, z, n_tr)
    return EtaVector(
        q=q,
        z=z,
        coeffs=coeffs,
        c_z=complex(np.sum(coeffs * coeffs)),
        tail_bound=eta_tail_bound(q, z, n_tr),
    )


def eigen_residual(q, z, n_tr: int, rows: str = "valid") -> tuple[float, complex]:
    """Relative residual of ``T eta - lambda eta`` and a Rayleigh eigenvalue.

    ``rows="valid"`` restricts both to rows unaffected by truncation;
    ``rows="all"`` keeps the last row, which sees the missing coefficient
    ``p_{n_tr}`` and therefore tracks the tail of ``eta``.
    """
    eta = eta_vector(q, z, n_tr)
    T = build_jacobi(q, n_tr)
    v = eta.coeffs
    Tv = T.entries @ v
    stop = T.valid_rows.stop if rows == "valid" else n_tr
    if rows not in ("valid", "all"):
        raise ValueError(f"unknown rows selector {rows!r}")
    res = Tv[:stop] - eta.eigenvalue * v[:stop]
    rel = float(np.linalg.norm(res) / np.linalg.norm(v[:stop]))
    rayleigh = complex(np.vdot(v[:stop], Tv[:stop]) / np.vdot(v[:stop], v[:stop]))
    return rel, rayleigh


@dataclass(frozen=True)
class ThetaFunctional:
    """Values ``theta_z(u^{(d/2)}_{ii})`` for d = 0..d_max."""

    q: QParam
    z: complex
    c_z: complex
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(self.values))

    def __getitem__(self, d: int) -> complex:
        return complex(self.values[d])

    @property
    def d_max(self) -> int:
        return len(self.values) - 1


def theta_pair(q, z, d_max: int, n_tr: int) -> ThetaFunctional:
    """Evaluate the central functional theta_z on spin-d/2 diagonal coefficients.

    The twisted character of spin d/2 acts through ``mu_d(T)``, so
    ``theta_z(u^{(d/2)}_{ii}) = <mu_d(T) eta_z, eta_zbar> / dim_q(d/2)`` with the
    pairing taken bilinearly (``p_n(zbar) = conj p_n(z)``).  ``mu_d(T) eta`` is
    built with ``v_{k+1} = T v_k - v_{k-1}`` and only rows untouched by the
    band growth enter the sum.
    """
    q = QParam.coerce(q)
    z = complex(z)
    _check_strip(z)
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    need = decay_length(q, z) + d_max + THETA_MARGIN
    if n_tr < need:
        raise ValueError(
            f"n_tr={n_tr} cannot support d_max={d_max} at z={z}: need at least {need}"
        )
    eta = eta_vector(q, z, n_tr)
    T = build_jacobi(q, n_tr).entries
    p = eta.coeffs
    values = np.empty(d_max + 1, dtype=complex)
    prev, cur = np.zeros_like(p), p.copy()
    for d in range(d_max + 1):
        stop = n_tr - d
        values[d] = np.sum(cur[:stop] * p[:stop]) / chebyshev_mu(d, q.gauge)
        prev, cur = cur, T @ cur - prev
    return ThetaFunctional(q=q, z=z, c_z=eta.c_z, values=values)
