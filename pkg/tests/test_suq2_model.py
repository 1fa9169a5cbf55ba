import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcentral import multipliers
from qcentral.qspecial import QParam, chebyshev_mu, q_hermite, q_pochhammer
from qcentral.suq2_model import (
    BandedOperator,
    build_alpha_toeplitz,
    build_jacobi,
    conditional_expectation,
    decay_length,
    eigen_residual,
    eta_coefficients,
    eta_tail_bound,
    eta_vector,
    jacobi_spectrum,
    rho_alpha,
    rho_gamma,
    theta_pair,
    toeplitz_residual,
    unitarity_residual,
)


def test_alpha_entries():
    a = build_alpha_toeplitz(0.5, 4)
    assert a.entries[0, 1] == pytest.approx(math.sqrt(0.75), rel=1e-15)
    assert np.all(np.diag(a.entries) == 0)
    assert a.band_leak() == 0.0


def test_alpha_rejects_tiny_truncation():
    with pytest.raises(ValueError):
        build_alpha_toeplitz(0.5, 3)


def test_toeplitz_relation():
    assert toeplitz_residual(0.5, 64) < 1e-14


def test_toeplitz_relation_fails_on_last_row():
    # the truncation guard is real: the last row breaks the relation
    q = 0.5
    a = build_alpha_toeplitz(q, 16)
    lhs = a @ a.H - q**2 * (a.H @ a)
    assert abs(lhs.entries[-1, -1] - (1 - q**2)) > 1e-3


def test_jacobi_entries():
    T = build_jacobi(0.5, 4)
    assert T.entries[0, 1] == pytest.approx(math.sqrt(3.0), rel=1e-15)
    assert np.all(np.diag(T.entries) == 0)


def test_jacobi_rejects_tiny_truncation():
    with pytest.raises(ValueError):
        build_jacobi(0.5, 3)


def test_jacobi_sign_of_q_irrelevant():
    assert np.array_equal(build_jacobi(-0.5, 20).entries, build_jacobi(0.5, 20).entries)


def test_jacobi_spectrum_matches_dense():
    ev = jacobi_spectrum(0.5, 60)
    dense = np.sort(np.linalg.eigvals(build_jacobi(0.5, 60).entries).real)
    assert np.allclose(ev, dense, atol=1e-8)


def test_jacobi_spectrum_truncation_stays_inside_two():
    # finite sections are similar to a symmetric matrix with off-diagonals <= 1
    ev = jacobi_spectrum(0.5, 400)
    g = QParam(0.5).gauge
    assert -g <= ev.min() and ev.max() <= g
    assert 1.99 < ev.max() < 2.0


def test_banded_product_tracks_band_and_guard():
    a = build_alpha_toeplitz(0.5, 10)
    prod = a @ a.H @ a
    assert prod.bandwidth == 3 and prod.guard == 3
    assert prod.band_leak() == 0.0
    with pytest.raises(ValueError):
        prod.entries[0, 0] = 1.0


def test_banded_operator_requires_square():
    with pytest.raises(ValueError):
        BandedOperator(np.zeros((2, 3)), 0, 0)


def test_conditional_expectation_of_alpha():
    q, n_tr = 0.5, 20
    E = conditional_expectation(rho_alpha(q, n_tr, (-4, 4)))
    a = build_alpha_toeplitz(q, n_tr)
    rows = E.valid_rows
    assert np.abs(E.entries[rows.start : rows.stop] - a.entries[rows.start : rows.stop]).max() < 1e-15


def test_conditional_expectation_of_gamma_is_zero():
    E = conditional_expectation(rho_gamma(0.5, 20, (-4, 4)))
    assert np.abs(E.entries).max() == 0.0


def test_conditional_expectation_of_gamma_star_gamma():
    q, n_tr = -0.5, 20
    g = rho_gamma(q, n_tr, (-4, 4))
    E = conditional_expectation(g.H @ g)
    rows = E.valid_rows
    expected = np.diag(q ** (2 * np.arange(n_tr)))
    assert np.abs(E.entries[rows.start : rows.stop] - expected[rows.start : rows.stop]).max() < 1e-15


def test_conditional_expectation_needs_zero_in_window():
    with pytest.raises(ValueError):
        conditional_expectation(rho_gamma(0.5, 8, (1, 3)))


@pytest.mark.parametrize("q", [0.2, -0.5, 0.9])
def test_unitarity_row(q):
    assert unitarity_residual(q, 64) < 1e-13


def test_eta_first_coefficient():
    assert eta_coefficients(0.5, 0.0, 5)[0] == 1.0


def test_eta_matches_q_hermite():
    # p_n(z) = |q|^n H_n(q^z + q^-z; q^2) / sqrt((q^2; q^2)_n)
    q, z = 0.5, 0.3 + 0.4j
    x = q**z + q**-z
    p = eta_coefficients(q, z, 30)
    ref = [q**n * q_hermite(n, x, q * q) / math.sqrt(q_pochhammer(q * q, q * q, n)) for n in range(30)]
    assert np.allclose(p, ref, rtol=1e-11, atol=1e-300)


@given(st.floats(-0.9, 0.9), st.floats(-2.0, 2.0))
def test_eta_conjugation_symmetry(re, im):
    z = complex(re, im)
    assert np.allclose(eta_coefficients(0.5, z.conjugate(), 40), np.conj(eta_coefficients(0.5, z, 40)))


def test_eigenvector_residual_and_eigenvalue():
    res, lam = eigen_residual(0.5, 0.3, 200)
    assert res < 1e-10
    assert abs(lam - (0.5**0.3 + 0.5**-0.3)) < 1e-12
    assert eta_vector(0.5, 0.3, 10).eigenvalue.real == pytest.approx(2.0433968097011519, rel=1e-15)
    assert eta_vector(0.5, 0.5, 10).eigenvalue.real == pytest.approx(2**-0.5 + 2**0.5, rel=1e-15)


def test_all_rows_residual_tracks_tail():
    # including the last row exposes the missing coefficient p_{n_tr}
    res_small, _ = eigen_residual(0.5, 0.9, 30, rows="all")
    res_large, _ = eigen_residual(0.5, 0.9, 200, rows="all")
    assert res_small > 1e-4 > res_large


def test_eta_rejects_boundary_of_strip():
    with pytest.raises(ValueError):
        eta_vector(0.5, 1.0, 50)


def test_tail_bound_is_a_majorant():
    q, z = 0.5, 0.6 + 0.3j
    p = eta_coefficients(q, z, 400)
    for n in (20, 60, 120):
        actual = float(np.sum(np.abs(p[n:]) ** 2))
        assert actual <= eta_tail_bound(q, z, n)


def test_tail_bound_underflow_terminates():
    assert eta_tail_bound(0.5, 0.3, 5000) == 0.0


def test_decay_length_monotone_in_re_z():
    assert decay_length(0.5, 0.1) < decay_length(0.5, 0.5) < decay_length(0.5, 0.9)


def test_theta_d0_is_c_z():
    th = theta_pair(0.5, 0.3 + 0.2j, 4, 300)
    assert th[0] == pytest.approx(th.c_z, rel=1e-14)
    assert th.c_z == pytest.approx(eta_vector(0.5, 0.3 + 0.2j, 300).c_z)


def test_theta_real_example():
    th = theta_pair(0.5, 0.4, 6, 300)
    assert th[6] == pytest.approx(th.c_z * multipliers.b_coeff(0.5, 0.4, 6), rel=1e-8)


def test_theta_complex_example():
    z = 0.3 + 0.7j
    th = theta_pair(0.5, z, 4, 300)
    expected = th.c_z * chebyshev_mu(4, 0.5**z + 0.5**-z) / chebyshev_mu(4, 2.5)
    assert abs(th[4] - expected) <= 1e-8 * abs(expected)
    assert abs(th[4].imag) > 1e-3


def test_theta_truncation_guard():
    with pytest.raises(ValueError, match="need at least"):
        theta_pair(0.5, 0.9, 20, 100)


def test_theta_positive_for_real_t():
    th = theta_pair(0.5, 0.5, 10, 300)
    assert np.all(th.values.real > 0) and np.all(th.values.imag == 0)
