"""Fusion rings of SU_q(2) / O_F^+ (spins), SO_q(3) and U_F^+ (two-letter words).

Irreducibles of U_F^+ are words over {a, b} (``a`` the fundamental
representation, ``b`` its conjugate) with fusion rule

    w . v = sum over w = x y, v = bar(y) z of  x z,

where ``bar`` reverses a word and swaps the letters.  Multiplicities are
always exact integers.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from itertools import product

from .qspecial import QParam, chebyshev_mu

__all__ = [
    "SpinLabel",
    "FreeWord",
    "FusionElement",
    "fuse_spins",
    "fuse_words",
    "fuse",
    "qdim",
    "classical_dim",
    "integer_spins",
    "all_words",
    "DimRow",
    "dim_growth_table",
]

_SWAP = {"a": "b", "b": "a"}


@dataclass(frozen=True, order=True)
class SpinLabel:
    """Irreducible of spin d/2."""

    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("spin label must be non-negative")

    @property
    def dim(self) -> int:
        return self.d + 1

    @property
    def is_integer_spin(self) -> bool:
        return self.d % 2 == 0

    def weights(self, q) -> list[float]:
        """Diagonal of Q: |q|^{2i} for i = -d/2, ..., d/2."""
        a = QParam.coerce(q).absq
        return [a ** (2 * i - self.d) for i in range(self.d + 1)]

    def __str__(self):
        return f"{self.d}/2" if self.d % 2 else str(self.d // 2)


@dataclass(frozen=True, order=True)
class FreeWord:
    """Element of the free monoid on {a, b}; ``a`` stands for alpha, ``b`` for beta."""

    letters: str = ""

    def __post_init__(self):
        translated = self.letters.replace("α", "a").replace("β", "b")
        if set(translated) - {"a", "b"}:
            raise ValueError(f"words use the letters a and b only, got {self.letters!r}")
        object.__setattr__(self, "letters", translated)

    def bar(self) -> "FreeWord":
        return FreeWord("".join(_SWAP[c] for c in reversed(self.letters)))

    def __add__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters or "e"


class FusionElement(Mapping):
    """Finitely supported N-combination of irreducible labels."""

    def __init__(self, terms: Mapping | Iterable = ()):
        counts = Counter(terms)
        for label, mult in counts.items():
            if not isinstance(mult, int) or mult < 0:
                raise ValueError(f"multiplicity of {label} must be a non-negative int")
        self._terms = {k: v for k, v in counts.items() if v > 0}

    def __getitem__(self, label):
        return self._terms[label]

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._terms == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FusionElement") -> "FusionElement":
        out = Counter(self._terms)
        out.update(other)
        return FusionElement(out)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self._terms.items()))
        return f"FusionElement({{{inner}}})"

    def total(self, weight: Callable) -> float:
        return sum(mult * weight(label) for label, mult in self._terms.items())


def fuse_spins(a: SpinLabel | int, b: SpinLabel | int) -> FusionElement:
    """Clebsch-Gordan ladder: spins |a-b|/2, |a-b|/2 + 1, ..., (a+b)/2."""
    a = a if isinstance(a, SpinLabel) else SpinLabel(a)
    b = b if isinstance(b, SpinLabel) else SpinLabel(b)
    return FusionElement({SpinLabel(c): 1 for c in range(abs(a.d - b.d), a.d + b.d + 1, 2)})


def fuse_words(w: FreeWord | str, v: FreeWord | str) -> FusionElement:
    w = w if isinstance(w, FreeWord) else FreeWord(w)
    v = v if isinstance(v, FreeWord) else FreeWord(v)
    out: Counter = Counter()
    for j in range(min(len(w), len(v)) + 1):
        x, y = w.letters[: len(w) - j], w.letters[len(w) - j :]
        if v.letters[:j] == FreeWord(y).bar().letters:
            out[FreeWord(x + v.letters[j:])] += 1
    return FusionElement(out)


def fuse(x, y) -> FusionElement:
    """Bilinear extension of the fusion product to labels and elements."""
    xs = x if isinstance(x, FusionElement) else FusionElement({x: 1})
    ys = y if isinstance(y, FusionElement) else FusionElement({y: 1})
    out: Counter = Counter()
    for (a, m), (b, n) in product(xs.items(), ys.items()):
        if isinstance(a, SpinLabel) and isinstance(b, SpinLabel):
            part = fuse_spins(a, b)
        elif isinstance(a, FreeWord) and isinstance(b, FreeWord):
            part = fuse_words(a, b)
        else:
            raise TypeError(f"cannot fuse {type(a).__name__} with {type(b).__name__}")
        for c, k in part.items():
            out[c] += m * n * k
    return FusionElement(out)


def _word_dim(word: FreeWord, generator):
    # dim(w c) = dim(w) g - dim(w') when w = w' bar(c), else dim(w) g
    dims = [1, generator]
    letters = word.letters
    for i in range(1, len(letters)):
        nxt = dims[-1] * generator
        if letters[i - 1] == _SWAP[letters[i]]:
            nxt -= dims[-2]
        dims.append(nxt)
    return dims[len(letters)]


def qdim(label: SpinLabel | FreeWord, q) -> float:
    """Quantum dimension: mu_d(|q| + 1/|q|) for spins; the ring map with
    ``qdim(a) = qdim(b) = |q| + 1/|q|`` for words."""
    q = QParam.coerce(q)
    if isinstance(label, SpinLabel):
        return float(chebyshev_mu(label.d, q.gauge))
    if isinstance(label, FreeWord):
        return float(_word_dim(label, q.gauge))
    raise TypeError(f"no quantum dimension for {type(label).__name__}")


def classical_dim(label: SpinLabel | FreeWord, n: int = 2) -> int:
    """Classical dimension; words use the generator dimension ``n``."""
    if isinstance(label, SpinLabel):
        return label.dim
    if isinstance(label, FreeWord):
        return _word_dim(label, int(n))
    raise TypeError(f"no dimension for {type(label).__name__}")


def integer_spins(element: FusionElement) -> FusionElement:
    """Restriction to the SO_q(3) sublattice (even d)."""
    return FusionElement({k: v for k, v in element.items() if k.is_integer_spin})


def all_words(max_len: int) -> list[FreeWord]:
    return [FreeWord("".join(p)) for n in range(max_len + 1) for p in product("ab", repeat=n)]


@dataclass(frozen=True)
class DimRow:
    d: int
    dim: float
    dim_q: float
    char_state_value: float
    ratio_to_norm: float


def dim_growth_table(q, n: int, d_max: int) -> tuple[list[DimRow], bool]:
    """Rows for the character-state test behind the noninjectivity criterion.

    ``dim = mu_d(N)``, ``dim_q = mu_d(|q| + 1/|q|)`` and the state value
    ``dim^2 / dim_q`` is compared with the character norm ``d + 1``.  The
    returned flag says whether that ratio diverges, i.e. whether
    ``|q| + 1/|q| < N^2 - 2`` holds strictly.
    """
    q = QParam.coerce(q)
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    rows = []
    for d in range(d_max + 1):
        dim = float(chebyshev_mu(d, int(n)))
        dq = float(chebyshev_mu(d, q.gauge))
        state = dim * dim / dq if math.isfinite(dq) else math.nan
        rows.append(DimRow(d, dim, dq, state, state / (d + 1)))
    diverges = q.gauge < n * n - 2 - 1e-12 * n * n
    return rows, diverges
