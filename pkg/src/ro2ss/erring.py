"""The closed-form ring pi_* ER(n) as a normal-form monomial ring.

The homotopy of ER(n) is the subring of the E2 algebra generated by

    v_k sigma^{l 2^{k+1}}  (0 <= k < n, l in Z),   a,   v_n^{+-1},   sigma^{+-2^{n+1}}

modulo ``v_0 = 2``, ``a^{2^{k+1}-1} v_k sigma^{l 2^{k+1}} = 0`` and the
re-bracketing relations among the v_k sigma-products. In normal form every
additive generator is ``2^w * a^i v^e v_n^en (sigma^2)^t`` where, with
``kappa`` the least k < n with ``e_k > 0`` (else n):

* R1  i > 0:  w = 0 and t divisible by 2^kappa;
* R2  i > 0:  i <= 2^{kappa+1} - 2;
* R3  i = 0:  w = 0 if t is divisible by 2^kappa, else w = 1.

R2 includes k = n (``a^{2^{n+1}-1} = 0``), which the v_n-differential
forces once v_n is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import Degree, FGGroup, valuation
from .pages import BlockIndex, PageMonomial, e2_block_basis, monomial_degree


class DegreeMismatch(AssertionError):
    pass


class NotInRing(ValueError):
    pass


def lam(n: int) -> int:
    """The shift ``2^{2n+1} - 2^{n+2} + 1`` of the main fibration."""
    return (1 << (2 * n + 1)) - (1 << (n + 2)) + 1


def period_length(n: int) -> int:
    """``2^{n+2} (2^n - 1)``."""
    return (1 << (n + 2)) * ((1 << n) - 1)


def max_filtration(n: int) -> int:
    return (1 << (n + 1)) - 2


def _admissible(M: PageMonomial) -> Optional[int]:
    """The 2-divisibility flag w of M's generator, or None if R1/R2 fail."""
    kappa = M.kappa()
    divisible = M.t % (1 << kappa) == 0
    if M.i > 0:
        if not divisible or M.i > (1 << (kappa + 1)) - 2:
            return None
        return 0
    return 0 if divisible else 1


@dataclass(frozen=True, order=True)
class ERBasisElement:
    monomial: PageMonomial
    w: int = 0

    def __post_init__(self):
        if _admissible(self.monomial) != self.w:
            raise NotInRing(f"2^{self.w}·{self.monomial.label()} is not a normal-form generator")

    @classmethod
    def of(cls, M: PageMonomial) -> "ERBasisElement":
        w = _admissible(M)
        if w is None:
            raise NotInRing(f"{M.label()} is zero in pi_* ER({M.n})")
        return cls(M, w)

    @property
    def degree(self) -> Degree:
        return monomial_degree(self.monomial)

    @property
    def i(self) -> int:
        return self.monomial.i

    def is_torsion(self) -> bool:
        return self.monomial.i > 0

    def order(self):
        return 2 if self.is_torsion() else None

    def label(self) -> str:
        body = self.monomial.label()
        return f"2·{body}" if self.w else body

    def __str__(self):
        return self.label()


def er_block_basis(n: int, b: BlockIndex) -> list:
    """Normal-form generators of pi_* ER(n) in RO-degree ``b.degree`` with v_n-exponent ``b.en``.

    Ordered by filtration, then by the E2 block order.
    """
    if n < 1:
        raise ValueError("height must be >= 1")
    out = []
    for i in range(max_filtration(n) + 1):
        for M in e2_block_basis(n, BlockIndex(b.degree, b.en, i)):
            w = _admissible(M)
            if w is not None:
                out.append(ERBasisElement(M, w))
    return out


def er_group(n: int, degree: Degree, en: int) -> FGGroup:
    basis = er_block_basis(n, BlockIndex(degree, en))
    return FGGroup([g.label() for g in basis], [g.order() for g in basis])


def normalize(n: int, scalar, M: PageMonomial):
    """Write ``scalar * M`` as ``(c, generator)``; None when it is zero."""
    scalar = Fraction(scalar)
    if scalar == 0:
        return None
    w = _admissible(M)
    if w is None:
        return None
    if M.i > 0:
        # 2a = 0
        if valuation(scalar) >= 1:
            return None
        return (1, ERBasisElement(M, 0))
    c = scalar / (1 << w)
    if c.denominator % 2 == 0:
        raise NotInRing(f"{scalar}·{M.label()} is not in pi_* ER({n})")
    return (c, ERBasisElement(M, w))


def er_product(n: int, x, y):
    """Product of ``(scalar, ERBasisElement)`` pairs, renormalised; None for zero."""
    (sx, gx), (sy, gy) = x, y
    M = gx.monomial.times(gy.monomial)
    scalar = Fraction(sx) * Fraction(sy) * (1 << (gx.w + gy.w))
    return normalize(n, scalar, M)


def one(n: int) -> ERBasisElement:
    return ERBasisElement(PageMonomial(0, (0,) * (n - 1), 0, 0), 0)


def a_element(n: int) -> ERBasisElement:
    return ERBasisElement(PageMonomial(1, (0,) * (n - 1), 0, 0), 0)


@dataclass(frozen=True)
class DistinguishedElement:
    name: str
    element: ERBasisElement
    degree: Degree


def _y_monomial(n: int) -> PageMonomial:
    return PageMonomial(0, (0,) * (n - 1), (1 << n) - 1, -(1 << n) * ((1 << (n - 1)) - 1))


def _period_monomial(n: int) -> PageMonomial:
    return PageMonomial(0, (0,) * (n - 1), 1 << (n + 1), -(1 << n) * ((1 << n) - 1))


def distinguished(n: int, name: str) -> DistinguishedElement:
    """``y(n)``, ``x(n) = a y(n)``, ``y_inverse(n)`` or ``period(n)``, with degree self-checks."""
    if n < 1:
        raise ValueError("height must be >= 1")
    y = _y_monomial(n)
    if name == "y":
        M, expected = y, Degree(lam(n), 1)
    elif name == "x":
        M, expected = y.times(PageMonomial(1, (0,) * (n - 1), 0, 0)), Degree(lam(n), 0)
    elif name == "y_inverse":
        M, expected = PageMonomial(0, y.e, -y.en, -y.t), Degree(-lam(n), -1)
    elif name == "period":
        M, expected = _period_monomial(n), Degree(period_length(n), 0)
    else:
        raise ValueError(f"unknown element {name!r}")
    element = ERBasisElement.of(M)
    if element.w != 0:
        raise NotInRing(f"{name}({n}) is not an indivisible generator")
    deg = monomial_degree(M)
    if deg != expected:
        raise DegreeMismatch(f"{name}({n}) has degree {deg}, expected {expected}")
    return DistinguishedElement(name, element, deg)


def a_power(n: int, k: int):
    """``a^k`` as ``(1, generator)``, or None if it vanishes."""
    return normalize(n, 1, PageMonomial(k, (0,) * (n - 1), 0, 0))
