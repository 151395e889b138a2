"""Monomials of the Borel spectral sequence and the E2 block bases.

The E2 term for E(n) is ``Z_(2)[v_1..v_{n-1}, v_n^{+-1}, a, sigma^{+-2}]/(2a)``
with

    |a| = -alpha,   |v_k| = (2^k - 1)(1 + alpha),   |sigma^2| = 2(alpha - 1).

A single RO(Z/2) degree is infinitely generated once n >= 2 (all powers of
v_1^3 v_2^-1 sit in degree 0), so the additive basis is cut into finite
blocks indexed by (degree, v_n-exponent, a-exponent).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .algebra import Degree


def v_weight(k: int) -> int:
    """``2^k - 1``, the coefficient in ``|v_k| = (2^k - 1)(1 + alpha)``."""
    return (1 << k) - 1


@dataclass(frozen=True, order=True)
class PageMonomial:
    """``a^i v_1^e_1 ... v_{n-1}^e_{n-1} v_n^en (sigma^2)^t``.

    The coefficient group is Z_(2) when ``i == 0`` and Z/2 otherwise.
    """

    i: int = 0
    e: tuple = ()
    en: int = 0
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(self.e))
        if self.i < 0 or any(x < 0 for x in self.e):
            raise ValueError(f"negative exponent in {self!r}")

    @property
    def n(self) -> int:
        return len(self.e) + 1

    def weight(self) -> int:
        """Sum of ``e_k (2^k - 1)`` including v_n."""
        n = self.n
        return sum(x * v_weight(k) for k, x in enumerate(self.e, 1)) + self.en * v_weight(n)

    def is_torsion(self) -> bool:
        return self.i > 0

    def times(self, other: "PageMonomial") -> "PageMonomial":
        if len(self.e) != len(other.e):
            raise ValueError("monomials of different heights")
        return PageMonomial(self.i + other.i, tuple(x + y for x, y in zip(self.e, other.e)),
                            self.en + other.en, self.t + other.t)

    def kappa(self) -> int:
        """Least k < n with ``e_k > 0``, else n."""
        for k, x in enumerate(self.e, 1):
            if x:
                return k
        return self.n

    def label(self) -> str:
        parts = []
        if self.i:
            parts.append("a" if self.i == 1 else f"a^{self.i}")
        n = self.n
        for k, x in enumerate(self.e, 1):
            if x:
                parts.append(f"v{k}" if x == 1 else f"v{k}^{x}")
        if self.en:
            parts.append(f"v{n}" if self.en == 1 else f"v{n}^{self.en}")
        if self.t:
            parts.append(f"σ^{2 * self.t}")
        return " ".join(parts) if parts else "1"

    def __str__(self):
        return self.label()


def unit(n: int) -> PageMonomial:
    return PageMonomial(0, (0,) * (n - 1), 0, 0)


def monomial(n: int, i: int = 0, e=None, en: int = 0, t: int = 0) -> PageMonomial:
    """Convenience constructor; ``e`` may be a dict ``{k: exponent}`` or a sequence."""
    if e is None:
        ev = (0,) * (n - 1)
    elif isinstance(e, dict):
        ev = tuple(e.get(k, 0) for k in range(1, n))
    else:
        ev = tuple(e)
    if len(ev) != n - 1:
        raise ValueError(f"height {n} needs {n - 1} v-exponents, got {len(ev)}")
    return PageMonomial(i, ev, en, t)


def monomial_degree(M: PageMonomial, n: Optional[int] = None) -> Degree:
    """RO(Z/2) degree of a page monomial."""
    if n is not None and n != M.n:
        raise ValueError(f"monomial has height {M.n}, not {n}")
    W = M.weight()
    return Degree(W - 2 * M.t, W + 2 * M.t - M.i)


@dataclass(frozen=True, order=True)
class BlockIndex:
    """A finite piece of a page: fixed degree, v_n-exponent and (optionally) filtration."""

    degree: Degree
    en: int
    filtration: Optional[int] = None

    def shifted(self, degree: Degree, en: int = 0, filtration: int = 0) -> "BlockIndex":
        f = None if self.filtration is None else self.filtration + filtration
        return BlockIndex(self.degree + degree, self.en + en, f)

    def key(self) -> tuple:
        return (self.degree.m, self.degree.p, self.en, -1 if self.filtration is None else self.filtration)


@lru_cache(maxsize=None)
def v_partitions(n: int, R: int) -> tuple:
    """All ``(e_1..e_{n-1})`` with ``sum e_k (2^k - 1) == R``, lexicographic."""
    if R < 0:
        return ()
    if n == 1:
        return ((),) if R == 0 else ()

    def rec(k: int, rest: int):
        # k runs over 1..n-1
        if k == n - 1:
            c = v_weight(k)
            if rest % c == 0:
                yield (rest // c,)
            return
        c = v_weight(k)
        for x in range(rest // c + 1):
            for tail in rec(k + 1, rest - x * c):
                yield (x,) + tail

    return tuple(sorted(rec(1, R)))


def block_parameters(degree: Degree, i: int):
    """Solve ``(W - 2t, W + 2t - i) == degree`` for (W, t); ``None`` if impossible."""
    s = degree.m + degree.p + i
    d = degree.p + i - degree.m
    if s % 2 or d % 4:
        return None
    return s // 2, d // 4


@lru_cache(maxsize=None)
def _e2_block(n: int, m: int, p: int, en: int, i: int) -> tuple:
    if i < 0:
        return ()
    sol = block_parameters(Degree(m, p), i)
    if sol is None:
        return ()
    W, t = sol
    R = W - en * v_weight(n)
    return tuple(PageMonomial(i, e, en, t) for e in v_partitions(n, R))


def e2_block_basis(n: int, b: BlockIndex) -> list:
    """All E2 monomials of the block, in lexicographic order of (e, t)."""
    if n < 1:
        raise ValueError("height must be >= 1")
    if b.filtration is None:
        raise ValueError("E2 blocks need a filtration")
    return list(_e2_block(n, b.degree.m, b.degree.p, b.en, b.filtration))


def block_of(M: PageMonomial) -> BlockIndex:
    return BlockIndex(monomial_degree(M), M.en, M.i)
