import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcentral.qspecial import (
    QParam,
    chebyshev_mu,
    chebyshev_mu_closed,
    chebyshev_mu_table,
    hermite_branch,
    q_binomial,
    q_binomial_rows,
    q_hermite,
    q_pochhammer,
)


def test_chebyshev_low_degrees():
    assert chebyshev_mu(0, 1.7) == 1.0
    assert chebyshev_mu(1, 1.7) == 1.7
    assert chebyshev_mu(3, 2) == 4
    assert chebyshev_mu(2, 2.5) == pytest.approx(5.25, abs=1e-15)


def test_chebyshev_integer_argument_is_exact():
    # mu_d(2) = d + 1 and mu_d(3) are Fibonacci numbers F_{2d+2}
    assert [chebyshev_mu(d, 2) for d in range(6)] == [1, 2, 3, 4, 5, 6]
    assert chebyshev_mu(40, 3) == 61305790721611591
    assert isinstance(chebyshev_mu(200, 5), int)


def test_chebyshev_mu3_value():
    # 2.5^3 - 2 * 2.5, the corrected figure used downstream
    assert chebyshev_mu(3, 2.5) == pytest.approx(10.625, rel=1e-15)


def test_chebyshev_table_matches_scalar():
    tab = chebyshev_mu_table(12, 1.3 + 0.2j)
    assert np.allclose(tab, [chebyshev_mu(d, 1.3 + 0.2j) for d in range(13)], rtol=1e-14)


def test_chebyshev_extended_precision_agrees():
    x = 0.5**0.1 + 0.5**-0.1
    assert chebyshev_mu(50, x, dps=40) == pytest.approx(chebyshev_mu(50, x), rel=1e-9)


@given(st.integers(0, 40), st.floats(1.05, 4.0))
def test_chebyshev_closed_form(d, y):
    assert chebyshev_mu(d, y + 1 / y) == pytest.approx(chebyshev_mu_closed(d, y), rel=1e-11)


@given(st.integers(0, 15), st.integers(0, 15), st.floats(-2.5, 2.5))
def test_chebyshev_product_rule(a, b, x):
    # mu_a mu_b = sum_{c = |a-b|, step 2}^{a+b} mu_c
    lhs = chebyshev_mu(a, x) * chebyshev_mu(b, x)
    rhs = sum(chebyshev_mu(c, x) for c in range(abs(a - b), a + b + 1, 2))
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-7)


def test_chebyshev_rejects_negative_degree():
    with pytest.raises(ValueError):
        chebyshev_mu(-1, 2.0)


def test_q_pochhammer_examples():
    assert q_pochhammer(0.3, 0.7, 0) == 1.0
    assert q_pochhammer(0.25, 0.25, 1) == 0.75
    assert q_pochhammer(0.5, 0.5, 2) == 0.375


def test_q_pochhammer_against_mpmath():
    assert q_pochhammer(0.3, 0.6, 12) == pytest.approx(float(mpmath.qp(0.3, 0.6, 12)), rel=1e-14)


def test_q_binomial_examples():
    assert q_binomial(7, 0, 0.3) == 1.0
    assert q_binomial(2, 1, 0.3) == pytest.approx(1.3, rel=1e-15)
    # (1-q^3)(1-q^4)/((1-q)(1-q^2)) = 1 + q + 2q^2 + q^3 + q^4
    q = 0.5
    assert q_binomial(4, 2, q) == pytest.approx(1 + q + 2 * q**2 + q**3 + q**4, rel=1e-15)
    assert q_binomial(4, 2, q) == pytest.approx(2.1875, rel=1e-15)


def test_q_binomial_rejects_k_above_n():
    with pytest.raises(ValueError):
        q_binomial(3, 4, 0.5)


@given(st.integers(0, 30), st.data(), st.floats(0.05, 0.95))
def test_q_binomial_symmetry_and_pascal(n, data, q):
    k = data.draw(st.integers(0, n))
    assert q_binomial(n, k, q) == q_binomial(n, n - k, q)
    rows = q_binomial_rows(n, q)
    assert rows[n][k] == pytest.approx(q_binomial(n, k, q), rel=1e-12)


def test_q_binomial_classical_limit():
    assert q_binomial(10, 4, 1 - 1e-9) == pytest.approx(math.comb(10, 4), rel=1e-6)


def test_q_hermite_low_degrees():
    x, q = 1.7, 0.3
    assert q_hermite(0, x, q) == 1.0
    assert q_hermite(1, x, q) == x
    assert q_hermite(2, x, q) == pytest.approx(x * x + q - 1, rel=1e-15)


@given(st.integers(0, 25), st.floats(0.05, 0.9), st.floats(-3.0, 3.0), st.floats(-1.0, 1.0))
def test_q_hermite_sum_matches_recurrence(n, q, re, im):
    x = complex(re, im)
    rec = q_hermite(n, x, q)
    s = q_hermite(n, x, q, method="sum")
    assert abs(rec - s) <= 1e-9 * max(1.0, abs(rec))


def test_q_hermite_extended_precision():
    assert q_hermite(30, 2.2, 0.25, dps=50) == pytest.approx(q_hermite(30, 2.2, 0.25), rel=1e-12)


def test_q_hermite_unknown_method():
    with pytest.raises(ValueError):
        q_hermite(2, 1.0, 0.5, method="other")


def test_hermite_branch():
    y = hermite_branch(0.3 + 0.1j)
    assert abs(y) >= 1.0
    assert y + 1 / y == pytest.approx(0.3 + 0.1j)


@pytest.mark.parametrize("bad", [0.0, 1.0, -1.0, 1.5, float("nan")])
def test_qparam_rejects(bad):
    with pytest.raises(ValueError):
        QParam(bad)


def test_qparam_gauge_and_sign():
    p = QParam(-0.5)
    assert p.absq == 0.5 and p.sign == -1
    assert p.gauge == 2.5
