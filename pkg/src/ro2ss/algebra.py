"""Exact linear algebra over the 2-local integers.

Everything in this package is graded over RO(Z/2) = Z + Z*alpha and has
coefficients in Z_(2), the integers with odd denominators allowed. This
module holds that bottom layer:

* :class:`Degree` -- an element ``m + p*alpha``.
* 2-local scalars, stored as :class:`fractions.Fraction` with odd denominator.
* :class:`FGGroup` -- a finitely generated Z_(2)-module ``Z_(2)^r + sum Z/2^k``.
* :class:`IntMatrix` -- a homomorphism between two such groups.
* :func:`smith_normal_form`, :func:`subquotient`, :func:`subgroup_equal`.

Z_(2) is a discrete valuation ring, so Smith normal form needs no gcd steps:
the entry of least 2-adic valuation divides every other entry, and is used
as the pivot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby
from fractions import Fraction
from typing import Iterable, Optional, Sequence

INF = math.inf

Matrix = list  # list of rows, each a list of Fractions


class CompositionNotZero(ValueError):
    """Raised when B*A is not zero but a homology group ker(B)/im(A) was requested."""


class NotTwoLocal(ValueError):
    pass


# ---------------------------------------------------------------------------
# Degrees


@dataclass(frozen=True, order=True)
class Degree:
    """The RO(Z/2) degree ``m + p*alpha``."""

    m: int
    p: int = 0

    def __add__(self, other: "Degree") -> "Degree":
        return Degree(self.m + other.m, self.p + other.p)

    def __sub__(self, other: "Degree") -> "Degree":
        return Degree(self.m - other.m, self.p - other.p)

    def __neg__(self) -> "Degree":
        return Degree(-self.m, -self.p)

    def __mul__(self, k: int) -> "Degree":
        return Degree(k * self.m, k * self.p)

    __rmul__ = __mul__

    def total(self) -> int:
        """Restriction to the trivial group, where alpha becomes 1."""
        return self.m + self.p

    @classmethod
    def parse(cls, text: str) -> "Degree":
        """Parse the ``m+pa`` syntax, e.g. ``"0-1a"``, ``"3"``, ``"-a"``, ``"2+a"``."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty degree")
        if not s.endswith("a"):
            return cls(int(s), 0)
        body = s[:-1]
        # split off the alpha coefficient: last sign not at position 0
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            m_part, p_part = "", body
        else:
            m_part, p_part = body[:cut], body[cut:]
        if p_part in ("", "+"):
            p = 1
        elif p_part == "-":
            p = -1
        else:
            p = int(p_part)
        m = int(m_part) if m_part else 0
        return cls(m, p)

    def __str__(self) -> str:
        if self.p == 0:
            return str(self.m)
        return f"{self.m}{self.p:+d}a"


ALPHA = Degree(0, 1)
ZERO_DEGREE = Degree(0, 0)


# ---------------------------------------------------------------------------
# 2-local scalars


def two_local(numerator, denominator=1) -> Fraction:
    """Build an element of Z_(2); rejects even denominators."""
    q = Fraction(numerator, denominator)
    if q.denominator % 2 == 0:
        raise NotTwoLocal(f"{q} is not in Z_(2)")
    return q


def is_two_local(x) -> bool:
    return Fraction(x).denominator % 2 == 1


def valuation(x) -> float:
    """2-adic valuation; ``math.inf`` for zero."""
    q = Fraction(x)
    if q == 0:
        return INF
    num, den = q.numerator, q.denominator
    v = (num & -num).bit_length() - 1
    w = (den & -den).bit_length() - 1
    return v - w


def unit_part(x) -> Fraction:
    """x / 2^valuation(x), a 2-local unit (for x != 0)."""
    q = Fraction(x)
    v = valuation(q)
    return q / (Fraction(2) ** int(v))


def _frac_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(k: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(A: Matrix, B: Matrix, ncols: int) -> Matrix:
    """``A @ B`` where ``B`` has ``ncols`` columns (needed when B has no rows)."""
    if not B:
        return [[Fraction(0)] * ncols for _ in A]
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


def columns_to_matrix(cols: Sequence[Sequence], nrows: int) -> Matrix:
    """Stack column vectors side by side into an ``nrows``-row matrix."""
    return [[Fraction(c[i]) for c in cols] for i in range(nrows)]


def matrix_columns(A: Matrix, ncols: int) -> list:
    return [[row[j] for row in A] for j in range(ncols)]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNF:
    U: Matrix
    D: Matrix
    V: Matrix
    Uinv: Matrix
    diagonal: tuple  # nonzero diagonal entries, each a power of 2
    rank: int


def smith_normal_form(M, ncols: Optional[int] = None):
    """Smith normal form over Z_(2).

    Returns ``(U, D, V)`` with ``D == U*M*V``, ``U`` and ``V`` invertible over
    Z_(2), and ``D`` diagonal with entries ``1, 2, 4, ...`` followed by zeros,
    each dividing the next.
    """
    s = _snf(M, ncols)
    return s.U, s.D, s.V


def _snf(M, ncols: Optional[int] = None) -> SNF:
    A = _frac_matrix(M)
    nr = len(A)
    nc = ncols if ncols is not None else (len(A[0]) if A else 0)
    for row in A:
        for x in row:
            if x.denominator % 2 == 0:
                raise NotTwoLocal(f"entry {x} is not in Z_(2)")
    U = identity(nr)
    Uinv = identity(nr)
    V = identity(nc)
    diag = []
    k = 0
    while k < min(nr, nc):
        best = None
        bv = INF
        for i in range(k, nr):
            row = A[i]
            for j in range(k, nc):
                x = row[j]
                if x:
                    v = valuation(x)
                    if v < bv:
                        bv, best = v, (i, j)
                        if v == 0:
                            break
            if bv == 0:
                break
        if best is None:
            break
        pi, pj = best
        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            U[k], U[pi] = U[pi], U[k]
            for row in Uinv:
                row[k], row[pi] = row[pi], row[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            for row in V:
                row[k], row[pj] = row[pj], row[k]
        # scale the pivot row so the pivot is exactly 2^v
        u = unit_part(A[k][k])
        if u != 1:
            inv = 1 / u
            A[k] = [x * inv for x in A[k]]
            U[k] = [x * inv for x in U[k]]
            for row in Uinv:
                row[k] = row[k] * u
        piv = A[k][k]
        for i in range(k + 1, nr):
            f = A[i][k] / piv
            if f:
                Ak, Ai = A[k], A[i]
                A[i] = [a - f * b for a, b in zip(Ai, Ak)]
                U[i] = [a - f * b for a, b in zip(U[i], U[k])]
                for row in Uinv:
                    row[k] += f * row[i]
        Ak = A[k]
        for j in range(k + 1, nc):
            f = Ak[j] / piv
            if f:
                for row in A:
                    row[j] -= f * row[k]
                for row in V:
                    row[j] -= f * row[k]
        diag.append(piv)
        k += 1
    return SNF(U=U, D=A, V=V, Uinv=Uinv, diagonal=tuple(diag), rank=len(diag))


# ---------------------------------------------------------------------------
# Groups and homomorphisms


def _check_order(o):
    if o is None:
        return None
    o = int(o)
    if o < 1 or o & (o - 1):
        raise ValueError(f"torsion order must be a power of 2, got {o}")
    return o


@dataclass(frozen=True)
class FGGroup:
    """A finitely generated Z_(2)-module with a named basis.

    ``orders[i]`` is ``None`` for a free generator and ``2**k`` for a
    generator of order ``2**k``. Order-1 generators are allowed in the
    input but carry no information.
    """

    generators: tuple = ()
    orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "orders", tuple(_check_order(o) for o in self.orders))
        if len(self.generators) != len(self.orders):
            raise ValueError("generators and orders differ in length")

    @classmethod
    def free(cls, labels) -> "FGGroup":
        labels = list(labels)
        return cls(labels, [None] * len(labels))

    @classmethod
    def from_invariants(cls, rank: int, torsion_exponents=()) -> "FGGroup":
        labels = [f"f{i}" for i in range(rank)] + [f"t{i}" for i in range(len(torsion_exponents))]
        return cls(labels, [None] * rank + [2 ** k for k in torsion_exponents])

    def __len__(self):
        return len(self.generators)

    @property
    def rank(self) -> int:
        return sum(o is None for o in self.orders)

    @property
    def torsion(self) -> tuple:
        """Sorted torsion exponents ``k`` (one per Z/2^k summand, ``k >= 1``)."""
        return tuple(sorted(o.bit_length() - 1 for o in self.orders if o is not None and o > 1))

    def invariants(self) -> tuple:
        return (self.rank, self.torsion)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def isomorphic(self, other: "FGGroup") -> bool:
        return self.invariants() == other.invariants()

    def relations(self) -> Matrix:
        """Relation columns (one ``order * e_i`` per torsion generator)."""
        cols = [[Fraction(o if j == i else 0) for j in range(len(self))]
                for i, o in enumerate(self.orders) if o is not None]
        return cols

    def reduce(self, vec) -> tuple:
        """Canonical representative of an element given in coordinates."""
        out = []
        for x, o in zip(vec, self.orders):
            x = Fraction(x)
            if o is not None:
                # Z_(2)/2^k = Z/2^k: odd denominators are invertible there
                x = Fraction(x.numerator * pow(x.denominator, -1, o) % o) if o > 1 else Fraction(0)
            out.append(x)
        return tuple(out)

    def describe(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z_(2)" if self.rank == 1 else f"Z_(2)^{self.rank}")
        for k, reps in groupby(self.torsion):
            c = len(list(reps))
            parts.append(f"Z/{2 ** k}" if c == 1 else f"(Z/{2 ** k})^{c}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.describe()


def direct_sum(groups: Iterable[FGGroup]) -> FGGroup:
    gens, orders = [], []
    for g in groups:
        gens.extend(g.generators)
        orders.extend(g.orders)
    return FGGroup(gens, orders)


@dataclass(frozen=True)
class IntMatrix:
    """A homomorphism ``source -> target`` written as a matrix on their bases.

    Column ``j`` is the image of ``source.generators[j]``. Entries are
    2-local; entries in a torsion row are read modulo that row's order.
    """

    entries: tuple
    source: FGGroup
    target: FGGroup

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len(rows) != len(self.target):
            raise ValueError(f"expected {len(self.target)} rows, got {len(rows)}")
        for row in rows:
            if len(row) != len(self.source):
                raise ValueError("row length does not match source size")
        object.__setattr__(self, "entries", rows)

    @property
    def shape(self):
        return (len(self.target), len(self.source))

    @classmethod
    def zero(cls, source: FGGroup, target: FGGroup) -> "IntMatrix":
        return cls(tuple((0,) * len(source) for _ in range(len(target))), source, target)

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def columns(self) -> list:
        return [self.column(j) for j in range(len(self.source))]

    def is_valid(self) -> bool:
        """``order(g) * image(g) == 0`` in the target for every source generator."""
        for j, o in enumerate(self.source.orders):
            if o is None:
                continue
            col = [o * x for x in self.column(j)]
            if not is_member(col, [], self.target):
                return False
        return True

    def is_zero(self) -> bool:
        return all(not any(self.target.reduce(c)) for c in self.columns())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if len(other.target) != len(self.source):
            raise ValueError("incompatible composition")
        prod = matmul(self.rows(), other.rows(), len(other.source))
        return IntMatrix(tuple(tuple(r) for r in prod), other.source, self.target)

    def equals(self, other: "IntMatrix") -> bool:
        """Equality as homomorphisms (columns compared in the target group)."""
        if self.shape != other.shape:
            return False
        return all(self.target.reduce(a) == self.target.reduce(b)
                   for a, b in zip(self.columns(), other.columns()))


# ---------------------------------------------------------------------------
# Submodules of free modules and of FGGroups


def column_span_basis(cols: Sequence[Sequence], nrows: int) -> list:
    """A Z_(2)-basis (list of columns) of the span of ``cols`` in Z_(2)^nrows."""
    cols = [c for c in cols if any(c)]
    if not cols or nrows == 0:
        return []
    s = _snf(columns_to_matrix(cols, nrows), len(cols))
    return [[s.Uinv[i][j] * s.diagonal[j] for i in range(nrows)] for j in range(s.rank)]


def kernel_basis(A: Matrix, ncols: int) -> list:
    """Z_(2)-basis of ``{x : A x = 0}`` as a list of columns of length ``ncols``."""
    if ncols == 0:
        return []
    if not A:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    s = _snf(A, ncols)
    return [[s.V[i][j] for i in range(ncols)] for j in range(s.rank, ncols)]


class Solver:
    """Solves ``sum y_j cols[j] == vec`` for many ``vec``, factoring once."""

    def __init__(self, cols: Sequence[Sequence], nrows: int):
        self.ncols = len(cols)
        self.nrows = nrows
        # the standard basis is common (untouched E2 blocks) and needs no factoring
        self._trivial = self.ncols == nrows and all(
            c[i] == (1 if i == j else 0) for j, c in enumerate(cols) for i in range(nrows))
        self._snf = None
        if cols and not self._trivial:
            self._snf = _snf(columns_to_matrix(cols, nrows), len(cols))

    def __call__(self, vec: Sequence):
        vec = [Fraction(x) for x in vec]
        k = self.ncols
        if not any(vec):
            return [Fraction(0)] * k
        if self._trivial:
            return vec
        s = self._snf
        if s is None:
            return None
        Uv = [sum((u * x for u, x in zip(row, vec) if x), Fraction(0)) for row in s.U]
        if any(Uv[s.rank:]):
            return None
        z = []
        for j in range(s.rank):
            q = Uv[j] / s.diagonal[j]
            if q.denominator % 2 == 0:
                return None
            z.append(q)
        return [sum((s.V[i][j] * z[j] for j in range(s.rank)), Fraction(0)) for i in range(k)]

    def contains(self, vec) -> bool:
        return self(vec) is not None


def solve(cols: Sequence[Sequence], vec: Sequence, nrows: int):
    """A 2-local solution ``y`` of ``sum y_j cols[j] == vec``, or ``None``."""
    if not any(vec):
        return [Fraction(0)] * len(cols)
    return Solver(cols, nrows)(vec)


def is_member(vec, gens: Sequence[Sequence], ambient: FGGroup) -> bool:
    """Is ``vec`` in the subgroup of ``ambient`` generated by ``gens``?"""
    if not gens:
        # membership in the zero subgroup needs no linear algebra
        for x, o in zip(vec, ambient.orders):
            x = Fraction(x)
            if x and (o is None or valuation(x) < valuation(o)):
                return False
        return True
    n = len(ambient)
    allgens = [list(g) for g in gens] + ambient.relations()
    return solve(allgens, vec, n) is not None


def subgroup_equal(gens1, gens2, ambient: FGGroup) -> bool:
    """Do the two generator lists span the same subgroup of ``ambient``?"""
    n = len(ambient)
    rel = ambient.relations()
    in2 = Solver([list(g) for g in gens2] + rel, n)
    in1 = Solver([list(g) for g in gens1] + rel, n)
    return all(in2.contains(g) for g in gens1) and all(in1.contains(g) for g in gens2)


@dataclass(frozen=True)
class Homology:
    """``ker(B)/im(A)`` with representatives for its generators."""

    group: FGGroup
    representatives: tuple  # columns in target coordinates
    cycles: tuple  # basis of the cycle module (lift to the free cover)


def homology(A_cols, B_cols, target: FGGroup, B_target: Optional[FGGroup] = None,
             check: bool = True) -> Homology:
    """Compute ``ker(B)/im(A)`` inside ``target``.

    ``A_cols`` are elements of ``target`` (the image generators of A).
    ``B_cols`` lists the images of the target's basis vectors under B, as
    elements of ``B_target``.
    """
    n = len(target)
    rel_t = target.relations()
    # kernel of B on the free cover of the target
    if B_target is None or not B_cols or len(B_target) == 0:
        cyc = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    else:
        c = len(B_target)
        rel_c = B_target.relations()
        big = [list(B_cols[j]) for j in range(n)] + [list(r) for r in rel_c]
        mat = columns_to_matrix(big, c)
        ker = kernel_basis(mat, len(big))
        cyc = column_span_basis([k[:n] for k in ker], n)
    if check and B_target is not None and B_cols and len(B_target):
        for a in A_cols:
            img = [sum((Fraction(B_cols[j][i]) * Fraction(a[j]) for j in range(n)), Fraction(0))
                   for i in range(len(B_target))]
            if not is_member(img, [], B_target):
                raise CompositionNotZero(f"B*A != 0: column {list(a)} maps to {img}")
    k = len(cyc)
    if k == 0:
        return Homology(FGGroup(), (), ())
    # express boundaries and torsion relations in cycle coordinates
    rels = []
    in_cyc = Solver(cyc, n)
    for v in list(A_cols) + rel_t:
        if not any(v):
            continue
        y = in_cyc(v)
        if y is None:
            raise CompositionNotZero(f"boundary {list(v)} is not a cycle")
        rels.append(y)
    if rels:
        s = _snf(columns_to_matrix(rels, k), len(rels))
        diag, Uinv = s.diagonal, s.Uinv
    else:
        diag, Uinv = (), identity(k)
    labels, orders, reps = [], [], []
    for j in range(k):
        o = None
        if j < len(diag):
            o = int(diag[j])
            if o == 1:
                continue
        rep = [sum((cyc[l][i] * Uinv[l][j] for l in range(k)), Fraction(0)) for i in range(n)]
        reps.append(tuple(rep))
        labels.append(f"h{len(labels)}")
        orders.append(o)
    return Homology(FGGroup(labels, orders), tuple(reps), tuple(tuple(c) for c in cyc))


def subquotient(A: Optional[IntMatrix], B: Optional[IntMatrix], target: FGGroup) -> FGGroup:
    """Isomorphism class of ``ker(B)/im(A)`` where ``A: X -> target -> Y: B``.

    Raises :class:`CompositionNotZero` when ``B*A`` is nonzero.
    """
    A_cols = A.columns() if A is not None else []
    if B is not None:
        B_cols = B.columns()
        return homology(A_cols, B_cols, target, B.target).group
    return homology(A_cols, [], target).group


def kernel_group(f: IntMatrix) -> FGGroup:
    return subquotient(None, f, f.source)


def cokernel_group(f: IntMatrix) -> FGGroup:
    return subquotient(f, None, f.target)


def image_generators(f: IntMatrix) -> list:
    return f.columns()


def kernel_generators(f: IntMatrix) -> list:
    """Generators of ker(f) as elements of ``f.source`` (torsion relations included)."""
    n = len(f.source)
    if n == 0:
        return []
    h = homology([], f.columns(), f.source, f.target, check=False)
    return [list(c) for c in h.cycles]


def is_isomorphism(f: IntMatrix) -> bool:
    """Bijective as a map of groups: zero kernel and zero cokernel."""
    return kernel_group(f).is_zero() and cokernel_group(f).is_zero()
