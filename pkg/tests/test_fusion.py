import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcentral.fusion import (
    FreeWord,
    FusionElement,
    SpinLabel,
    all_words,
    classical_dim,
    dim_growth_table,
    fuse,
    fuse_spins,
    fuse_words,
    integer_spins,
    qdim,
)
from qcentral.qspecial import chebyshev_mu

S = SpinLabel
W = FreeWord
words = st.text(alphabet="ab", max_size=6).map(FreeWord)


def test_spin_examples():
    assert fuse_spins(1, 1) == {S(0): 1, S(2): 1}
    assert fuse_spins(0, 5) == {S(5): 1}
    assert fuse_spins(2, 3) == {S(1): 1, S(3): 1, S(5): 1}


def test_spin_example_against_chebyshev_expansion():
    # mu_2 mu_3 = mu_1 + mu_3 + mu_5 at sample points
    for x in np.linspace(-3, 3, 10):
        lhs = chebyshev_mu(2, x) * chebyshev_mu(3, x)
        assert lhs == pytest.approx(sum(chebyshev_mu(c, x) for c in (1, 3, 5)), abs=1e-9)


def test_word_examples():
    assert fuse_words("a", "b") == {W(""): 1, W("ab"): 1}
    assert fuse_words("a", "a") == {W("aa"): 1}
    assert fuse_words("", "bab") == {W("bab"): 1}
    assert fuse_words("α", "β") == fuse_words("a", "b")


def test_word_bar():
    assert W("aab").bar() == W("abb")
    assert W("").bar() == W("")


def test_qdim_examples():
    assert qdim(S(1), 0.5) == 2.5
    assert qdim(W("a"), 0.5) == 2.5 and qdim(W("b"), 0.5) == 2.5
    assert qdim(W("ab"), 0.5) == pytest.approx(5.25)
    assert qdim(W(""), 0.5) == 1.0


@given(st.integers(0, 20), st.integers(0, 20))
def test_spin_fusion_is_dimension_homomorphism(a, b):
    prod = fuse_spins(a, b)
    assert prod.total(lambda c: classical_dim(c)) == (a + 1) * (b + 1)
    assert prod.total(lambda c: qdim(c, 0.5)) == pytest.approx(qdim(S(a), 0.5) * qdim(S(b), 0.5), rel=1e-12)
    assert prod == fuse_spins(b, a)


@given(words, words)
def test_word_fusion_is_dimension_homomorphism(w, v):
    prod = fuse_words(w, v)
    for n in (2, 3):
        assert prod.total(lambda c: classical_dim(c, n)) == classical_dim(w, n) * classical_dim(v, n)
    assert prod.total(lambda c: qdim(c, 0.3)) == pytest.approx(qdim(w, 0.3) * qdim(v, 0.3), rel=1e-10)


@given(words, words, words)
def test_word_fusion_associative(u, v, w):
    assert fuse(fuse(u, v), w) == fuse(u, fuse(v, w))


@given(words)
def test_unit_appears_once_in_w_wbar(w):
    assert fuse_words(w, w.bar())[W("")] == 1


def test_word_fusion_not_commutative():
    assert fuse_words("a", "ab") != fuse_words("ab", "a")


def test_fusion_element_rules():
    e = FusionElement({S(1): 2})
    assert (e + FusionElement({S(1): 1, S(3): 1})) == {S(1): 3, S(3): 1}
    with pytest.raises(ValueError):
        FusionElement({S(1): -1})
    with pytest.raises(TypeError):
        fuse(S(1), W("a"))
    assert hash(FusionElement({S(0): 1})) == hash(FusionElement({S(0): 1}))


def test_integer_spin_restriction_closed():
    # SO_q(3): integer spins fuse into integer spins
    for a in range(0, 8, 2):
        for b in range(0, 8, 2):
            prod = fuse_spins(a, b)
            assert integer_spins(prod) == prod


def test_labels_and_validation():
    assert str(S(3)) == "3/2" and str(S(4)) == "2"
    assert S(2).weights(0.5) == pytest.approx([4.0, 1.0, 0.25])
    with pytest.raises(ValueError):
        S(-1)
    with pytest.raises(ValueError):
        W("abc")
    assert len(all_words(3)) == 15


def test_dim_growth_rows():
    rows, diverges = dim_growth_table(0.5, 3, 6)
    assert rows[0].dim == rows[0].dim_q == rows[0].char_state_value == 1.0
    assert diverges  # 2.5 < 3^2 - 2
    for r in rows:
        assert r.char_state_value == pytest.approx(r.dim**2 / r.dim_q)


def test_dim_growth_when_gauge_equals_n():
    # q + 1/q = N: dim_q = dim, so the state value is mu_d(N)
    n = 3
    q = (n - np.sqrt(n * n - 4)) / 2
    rows, _ = dim_growth_table(q, n, 8)
    for r in rows:
        assert r.char_state_value == pytest.approx(r.dim, rel=1e-9)
        assert r.ratio_to_norm == pytest.approx(r.dim / (r.d + 1), rel=1e-9)


def test_dim_growth_boundary_is_not_divergent():
    # q + 1/q = 14 = N^2 - 2 for N = 4
    q = (14 - np.sqrt(14 * 14 - 4)) / 2
    _, diverges = dim_growth_table(q, 4, 3)
    assert not diverges
    with pytest.raises(ValueError):
        dim_growth_table(0.5, 1, 3)
