"""pi_* E(n) = Z_(2)[v_1, ..., v_{n-1}, v_n^{+-1}] and its conjugation action.

Conjugation acts by ``sigma(v_k) = -v_k``, i.e. by ``(-1)^{j/2}`` on
pi_j. On the spectrum E_V the action picks up a further ``(-1)^p`` for
``V = m + p*alpha``, since the two identifications of E_{V-1} and
E_{V-alpha} differ by ``sigma~ = -sigma``.

``sign=+1`` swaps in the wrong convention ``sigma(v_k) = +v_k``; it exists so
that negative controls can be written.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import FGGroup, IntMatrix
from .pages import v_partitions, v_weight


@dataclass(frozen=True, order=True)
class EMonomial:
    e: tuple
    en: int

    @property
    def n(self) -> int:
        return len(self.e) + 1

    def degree(self) -> int:
        return 2 * (sum(x * v_weight(k) for k, x in enumerate(self.e, 1)) + self.en * v_weight(self.n))

    def times(self, other: "EMonomial") -> "EMonomial":
        return EMonomial(tuple(x + y for x, y in zip(self.e, other.e)), self.en + other.en)

    def label(self) -> str:
        parts = [f"v{k}" if x == 1 else f"v{k}^{x}" for k, x in enumerate(self.e, 1) if x]
        if self.en:
            parts.append(f"v{self.n}" if self.en == 1 else f"v{self.n}^{self.en}")
        return " ".join(parts) if parts else "1"

    def __str__(self):
        return self.label()


def e_block_basis(n: int, j: int, en: int) -> list:
    """Monomials of pi_j E(n) with v_n-exponent ``en``."""
    if n < 1:
        raise ValueError("height must be >= 1")
    if j % 2:
        return []
    R = j // 2 - en * v_weight(n)
    return [EMonomial(e, en) for e in v_partitions(n, R)]


def e_group(n: int, j: int, en: int) -> FGGroup:
    return FGGroup.free(m.label() for m in e_block_basis(n, j, en))


def sigma_action(n: int, M: EMonomial, twist: int = 0, sign: int = -1):
    """``(s, M)`` with ``sigma(M) = s * M``.

    ``twist`` is the alpha-coefficient of the shift V when acting on E_V.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    k = sum(M.e) + M.en
    s = sign ** (k % 2)
    if twist % 2:
        s = -s
    return (s, M)


def one_minus_sigma(n: int, j: int, en: int, twist: int = 0, sign: int = -1) -> IntMatrix:
    """``1 - sigma`` on the block (j, en) of pi_* E(n)_V, ``twist = V.p``."""
    basis = e_block_basis(n, j, en)
    g = FGGroup.free(m.label() for m in basis)
    rows = []
    for r, M in enumerate(basis):
        s, _ = sigma_action(n, M, twist, sign)
        rows.append(tuple(Fraction(1 - s) if c == r else Fraction(0) for c in range(len(basis))))
    return IntMatrix(tuple(rows), g, g)


def one_plus_sigma(n: int, j: int, en: int, twist: int = 0, sign: int = -1) -> IntMatrix:
    basis = e_block_basis(n, j, en)
    g = FGGroup.free(m.label() for m in basis)
    rows = []
    for r, M in enumerate(basis):
        s, _ = sigma_action(n, M, twist, sign)
        rows.append(tuple(Fraction(1 + s) if c == r else Fraction(0) for c in range(len(basis))))
    return IntMatrix(tuple(rows), g, g)
