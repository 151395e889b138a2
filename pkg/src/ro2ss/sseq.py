"""Page-by-page computation of the Borel spectral sequence for E(n).

The only differentials are

    d_{2^{k+1}-1}(sigma^{-2^k}) = v_k a^{2^{k+1}-1},    1 <= k <= n,

with ``a`` and every ``v_k`` permanent cycles; everything else follows from
the Leibniz rule. On a monomial ``M`` with ``sigma^{2t}`` this gives

    d_r(M) = (-t / 2^{k-1}) * a^r v_k sigma^{2^k} * M

whenever ``2^{k-1}`` divides ``t``. Every target has positive a-exponent
and hence coefficients in Z/2, so only the parity of the scalar matters and
sign conventions drop out.

Each page is stored blockwise: for a block of E2 monomials we keep the
cycle lattice Z_r and boundary lattice B_r inside the free cover of the E2
block, and E_r = Z_r / (B_r + torsion relations). d_r maps the block at
(degree, en, i) to the block at (degree - 1, en + [k == n], i + r).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional

from .algebra import (
    Degree,
    FGGroup,
    Homology,
    Solver,
    columns_to_matrix,
    column_span_basis,
    homology,
    kernel_basis,
    solve,
    unit_part,
    valuation,
)
from .pages import BlockIndex, PageMonomial, e2_block_basis


class NotOnPage(ValueError):
    """The monomial cannot represent a class on the requested page."""


class WindowNotClosed(ValueError):
    """A page turn needed a neighbouring block that the window does not contain."""


class NotACycle(ArithmeticError):
    """d_r produced something that is not a d_s-cycle for s < r (engine bug)."""


def differential_pages(n: int) -> tuple:
    """Pages carrying a nonzero differential: ``2^{k+1} - 1`` for k = 1..n."""
    return tuple((1 << (k + 1)) - 1 for k in range(1, n + 1))


def differential_index(n: int, r: int) -> Optional[int]:
    """The k with ``r == 2^{k+1} - 1`` (1 <= k <= n), else None."""
    for k, rr in enumerate(differential_pages(n), 1):
        if rr == r:
            return k
    return None


def last_page(n: int) -> int:
    """First page equal to E-infinity."""
    return (1 << (n + 1))


@dataclass(frozen=True)
class Differential:
    r: int
    k: int

    @classmethod
    def on_page(cls, n: int, r: int) -> Optional["Differential"]:
        k = differential_index(n, r)
        return None if k is None else cls(r, k)

    def degree_shift(self) -> Degree:
        return Degree(-1, 0)

    def en_shift(self, n: int) -> int:
        return 1 if self.k == n else 0

    def target_block(self, n: int, b: BlockIndex) -> BlockIndex:
        return b.shifted(self.degree_shift(), self.en_shift(n), self.r)

    def source_block(self, n: int, b: BlockIndex) -> BlockIndex:
        return b.shifted(-self.degree_shift(), -self.en_shift(n), -self.r)

    def multiplier(self, n: int) -> PageMonomial:
        """The monomial ``a^r v_k sigma^{2^k}`` that d_r multiplies by."""
        e = [0] * (n - 1)
        en = 0
        if self.k == n:
            en = 1
        else:
            e[self.k - 1] = 1
        return PageMonomial(self.r, tuple(e), en, 1 << (self.k - 1))


def apply_differential(n: int, r: int, M: PageMonomial, coeff=1) -> list:
    """d_r of the class ``coeff * M`` as a list of ``(scalar, monomial)``.

    The result has at most one term; the scalar is 1 (Z/2 coefficients).
    When ``2^{k-1}`` does not divide the sigma^2-exponent, the class can
    only have survived to page r through a factor v_j with j < k (v_0 = 2
    included, via an even ``coeff``); such a factor kills the would-be
    target ``v_j a^{>= 2^{j+1}-1}``, so d_r vanishes. Any other such input
    raises :class:`NotOnPage`.
    """
    if M.n != n:
        raise ValueError(f"monomial has height {M.n}, expected {n}")
    d = Differential.on_page(n, r)
    coeff = Fraction(coeff)
    if d is None or coeff == 0:
        return []
    k = d.k
    q = Fraction(-M.t, 1 << (k - 1))
    if q.denominator != 1:
        s = valuation(M.t)
        if valuation(coeff) >= 1 or M.kappa() <= s:
            return []
        raise NotOnPage(f"{M.label()} does not survive to E_{r}")
    scalar = coeff * q
    if valuation(scalar) >= 1:
        return []
    return [(1, M.times(d.multiplier(n)))]


# ---------------------------------------------------------------------------
# blocks of a page


@dataclass(frozen=True)
class PageBlock:
    """One block of E_r: Z_r and B_r as lattices in the free cover of the E2 block."""

    index: BlockIndex
    monomials: tuple
    cycles: tuple
    boundaries: tuple

    @cached_property
    def ambient(self) -> FGGroup:
        torsion = bool(self.index.filtration)
        return FGGroup([m.label() for m in self.monomials],
                       [2 if torsion else None] * len(self.monomials))

    @cached_property
    def homology(self) -> Homology:
        if not self.monomials:
            return Homology(FGGroup(), (), ())
        h = _quotient(self.cycles, self.boundaries, self.ambient)
        return h

    @property
    def group(self) -> FGGroup:
        h = self.homology
        labels = [_vector_label(rep, self.monomials) for rep in h.representatives]
        return FGGroup(labels, h.group.orders)

    def is_zero(self) -> bool:
        return self.homology.group.is_zero()

    def representatives(self) -> list:
        """Surviving classes as formal sums ``[(scalar, monomial), ...]``."""
        return [[(c, m) for c, m in zip(rep, self.monomials) if c]
                for rep in self.homology.representatives]


def _vector_label(vec, monomials) -> str:
    terms = []
    for c, m in zip(vec, monomials):
        if not c:
            continue
        if c == 1:
            terms.append(m.label())
        else:
            terms.append(f"{c}·{m.label()}")
    return " + ".join(terms) if terms else "0"


def _quotient(cycles, boundaries, ambient: FGGroup) -> Homology:
    """Z / (B + relations) with Z given as a lattice basis."""
    n = len(ambient)
    cyc = [list(c) for c in cycles]
    if not cyc:
        return Homology(FGGroup(), (), ())
    rels = []
    in_cyc = Solver(cyc, n)
    for v in list(boundaries) + ambient.relations():
        if not any(v):
            continue
        y = in_cyc(v)
        if y is None:
            raise NotACycle(f"boundary {list(v)} outside the cycle lattice")
        rels.append(y)
    k = len(cyc)
    h = homology(rels, [], FGGroup.free(range(k)))
    reps = []
    for rep in h.representatives:
        vec = [sum((cyc[l][i] * rep[l] for l in range(k)), Fraction(0)) for i in range(n)]
        lead = next(c for c in vec if c)
        u = unit_part(lead)
        reps.append(tuple(c / u for c in vec))
    return Homology(h.group, tuple(reps), tuple(tuple(c) for c in cyc))


def e2_block(n: int, b: BlockIndex) -> PageBlock:
    mons = tuple(e2_block_basis(n, b))
    k = len(mons)
    ident = tuple(tuple(Fraction(int(i == j)) for i in range(k)) for j in range(k))
    return PageBlock(b, mons, ident, ())


def differential_on_vector(n: int, r: int, vec, source: PageBlock, target_monomials) -> list:
    """d_r of a class given by E2 coordinates in ``source``, in target coordinates."""
    index = {m: j for j, m in enumerate(target_monomials)}
    out = [Fraction(0)] * len(target_monomials)
    for c, M in zip(vec, source.monomials):
        if not c:
            continue
        for s, T in apply_differential(n, r, M, c):
            try:
                out[index[T]] += s
            except KeyError:
                raise NotACycle(f"d_{r}({M.label()}) = {T.label()} outside its block") from None
    return out


def _turn_block(n: int, r: int, here: PageBlock, tgt: PageBlock, src: PageBlock) -> PageBlock:
    """Pass one block from E_r to E_{r+1} given its d_r neighbours."""
    if not here.monomials:
        return PageBlock(here.index.shifted(Degree(0, 0)), (), (), ())
    nh = len(here.monomials)
    # new boundaries: image of d_r from the source block
    incoming = []
    for z in src.cycles:
        img = differential_on_vector(n, r, z, src, here.monomials)
        if any(img):
            incoming.append(img)
    # new cycles: classes whose d_r lies in B_r(target) + relations
    cycles = [list(z) for z in here.cycles]
    images = []
    if tgt.monomials:
        images = [differential_on_vector(n, r, z, here, tgt.monomials) for z in cycles]
    if not incoming and not any(any(img) for img in images):
        # d_r is zero into and out of this block
        return here
    new_b = list(here.boundaries) + incoming
    if tgt.monomials:
        nt = len(tgt.monomials)
        allowed = list(tgt.boundaries) + tgt.ambient.relations()
        in_tgt = Solver(list(tgt.cycles), nt)
        for img in images:
            if any(img) and not in_tgt.contains(img):
                raise NotACycle(f"d_{r} lands outside the cycles of {tgt.index}")
        if any(any(img) for img in images):
            cols = images + [list(a) for a in allowed]
            ker = kernel_basis(columns_to_matrix(cols, nt), len(cols))
            combos = [kv[:len(cycles)] for kv in ker]
            vecs = [[sum((c * z[i] for c, z in zip(combo, cycles)), Fraction(0)) for i in range(nh)]
                    for combo in combos]
            cycles = column_span_basis(vecs, nh)
    new_b = [b for b in new_b if any(b)]
    return PageBlock(here.index, here.monomials, tuple(tuple(z) for z in cycles), tuple(tuple(b) for b in new_b))


# ---------------------------------------------------------------------------
# whole pages


@dataclass
class PageBasis:
    """The blocks of E_r over a window."""

    n: int
    r: int
    blocks: dict = field(default_factory=dict)

    def groups(self) -> dict:
        return {b: blk.group for b, blk in self.blocks.items()}

    def nonzero(self) -> dict:
        return {b: blk for b, blk in self.blocks.items() if not blk.is_zero()}


def e2_page(n: int, window: Iterable[BlockIndex]) -> PageBasis:
    return PageBasis(n, 2, {b: e2_block(n, b) for b in window})


def _neighbour(page: PageBasis, b: BlockIndex) -> PageBlock:
    if b.filtration is not None and b.filtration < 0:
        return PageBlock(b, (), (), ())
    blk = page.blocks.get(b)
    if blk is not None:
        return blk
    if not e2_block_basis(page.n, b):
        return PageBlock(b, (), (), ())
    raise WindowNotClosed(f"block {b} is needed on page {page.r} but not in the window")


def turn_page(n: int, r: int, current: PageBasis, strict: bool = True) -> PageBasis:
    """E_r -> E_{r+1} over the window of ``current``.

    With ``strict=False`` blocks whose d_r neighbours fall outside the window
    are dropped instead of raising :class:`WindowNotClosed`, so the window
    shrinks by one differential's reach.
    """
    if current.r != r or current.n != n:
        raise ValueError(f"expected a page E_{r} for n={n}, got E_{current.r} for n={current.n}")
    d = Differential.on_page(n, r)
    if d is None:
        return PageBasis(n, r + 1, dict(current.blocks))
    out = {}
    for b, blk in current.blocks.items():
        try:
            tgt = _neighbour(current, d.target_block(n, b))
            src = _neighbour(current, d.source_block(n, b))
        except WindowNotClosed:
            if strict:
                raise
            continue
        out[b] = _turn_block(n, r, blk, tgt, src)
    return PageBasis(n, r + 1, out)


class BorelSS:
    """Lazily computed pages for one height, memoised per block.

    Windows never need to be closed by hand: a block pulls in exactly the
    neighbours its page turns depend on.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("height must be >= 1")
        self.n = n
        self.pages = differential_pages(n)
        self._cache = {}

    def stage(self, r: int) -> int:
        """Number of differentials already applied on E_r."""
        return sum(1 for rr in self.pages if rr < r)

    def block(self, b: BlockIndex, r: int) -> PageBlock:
        """The block ``b`` of E_r (E-infinity for r >= 2^{n+1})."""
        if b.filtration is None:
            raise ValueError("spectral-sequence blocks carry a filtration")
        return self._block(b, self.stage(r))

    def _block(self, b: BlockIndex, s: int) -> PageBlock:
        key = (b, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if b.filtration < 0:
            res = PageBlock(b, (), (), ())
        elif s == 0:
            res = e2_block(self.n, b)
        else:
            prev = self._block(b, s - 1)
            if not prev.monomials:
                res = prev
            else:
                r = self.pages[s - 1]
                d = Differential.on_page(self.n, r)
                tgt = self._block(d.target_block(self.n, b), s - 1)
                src = self._block(d.source_block(self.n, b), s - 1)
                res = _turn_block(self.n, r, prev, tgt, src)
        self._cache[key] = res
        return res

    def page(self, r: int, window: Iterable[BlockIndex]) -> PageBasis:
        return PageBasis(self.n, r, {b: self.block(b, r) for b in window})

    def d_matrix(self, r: int, b: BlockIndex):
        """Matrix of d_r on E_r-representatives of ``b`` into E2 coordinates of its target."""
        d = Differential.on_page(self.n, r)
        if d is None:
            return None
        here = self.block(b, r)
        tgt = self.block(d.target_block(self.n, b), r)
        return [differential_on_vector(self.n, r, z, here, tgt.monomials) for z in here.cycles]

    def d_nonzero(self, r: int, b: BlockIndex) -> bool:
        """Does d_r act nontrivially on the block ``b`` of E_r?"""
        d = Differential.on_page(self.n, r)
        if d is None:
            return False
        here = self.block(b, r)
        tgt = self.block(d.target_block(self.n, b), r)
        if not here.monomials or not tgt.monomials:
            return False
        allowed = list(tgt.boundaries) + tgt.ambient.relations()
        for z in here.cycles:
            img = differential_on_vector(self.n, r, z, here, tgt.monomials)
            if any(img) and solve(allowed, img, len(tgt.monomials)) is None:
                return True
        return False

    def cache_size(self) -> int:
        return len(self._cache)


@lru_cache(maxsize=None)
def engine(n: int) -> BorelSS:
    return BorelSS(n)


def e_infinity(n: int, window: Iterable[BlockIndex]) -> PageBasis:
    """E-infinity over the given blocks (auxiliary neighbours are computed as needed)."""
    ss = engine(n)
    return ss.page(last_page(n), window)


def filtration_window(degrees: Iterable[Degree], ens: Iterable[int], max_filtration: int) -> list:
    ens = list(ens)
    return [BlockIndex(d, en, i) for d in degrees for en in ens for i in range(max_filtration + 1)]


def d_squared_vanishes(n: int, b: BlockIndex, r: int) -> bool:
    """d_r o d_r = 0 on the block ``b`` of E_r."""
    d = Differential.on_page(n, r)
    if d is None:
        return True
    ss = engine(n)
    here = ss.block(b, r)
    t1 = ss.block(d.target_block(n, b), r)
    t2 = ss.block(d.target_block(n, t1.index), r)
    if not here.monomials or not t1.monomials or not t2.monomials:
        return True
    allowed = list(t2.boundaries) + t2.ambient.relations()
    for z in here.cycles:
        img = differential_on_vector(n, r, z, here, t1.monomials)
        img2 = differential_on_vector(n, r, img, t1, t2.monomials)
        if any(img2) and solve(allowed, img2, len(t2.monomials)) is None:
            return False
    return True
