import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ro2ss.algebra import Degree
from ro2ss.pages import (
    BlockIndex,
    PageMonomial,
    block_of,
    e2_block_basis,
    monomial,
    monomial_degree,
    v_weight,
)


def test_generator_degrees():
    assert monomial_degree(monomial(1, en=1)) == Degree(1, 1)
    assert monomial_degree(monomial(1, i=1)) == Degree(0, -1)
    assert monomial_degree(monomial(2, e=[1])) == Degree(1, 1)
    assert monomial_degree(monomial(2, en=1)) == Degree(3, 3)
    assert monomial_degree(monomial(1, t=1)) == Degree(-2, 2)


def test_period_element_degree():
    assert monomial_degree(monomial(2, en=8, t=-12)) == Degree(48, 0)
    assert monomial_degree(monomial(1, en=4, t=-2)) == Degree(8, 0)


def test_labels():
    assert monomial(1).label() == "1"
    assert monomial(2, i=2, e=[3], en=-1, t=2).label() == "a^2 v1^3 v2^-1 σ^4"
    with pytest.raises(ValueError):
        PageMonomial(-1, (), 0, 0)


def E2(n, m, p, en, i):
    return [M.label() for M in e2_block_basis(n, BlockIndex(Degree(m, p), en, i))]


def test_block_examples():
    assert E2(1, 0, 0, 0, 0) == ["1"]
    assert E2(1, 0, 0, 2, 4) == ["a^4 v1^2 σ^2"]
    assert E2(2, 0, 0, -1, 0) == ["v1^3 v2^-1"]
    # parity obstructions give empty blocks
    assert E2(1, 1, 0, 0, 0) == []


def scan(n, degree, en, i, bound=12):
    """Brute-force oracle: every exponent vector in a box."""
    out = []
    for e in itertools.product(range(0, 3 * bound), repeat=n - 1):
        for t in range(-bound, bound + 1):
            M = PageMonomial(i, e, en, t)
            if monomial_degree(M) == degree:
                out.append(M)
    return sorted(out)


@pytest.mark.parametrize("n, m, p, en, i", [
    (1, 0, 0, 2, 4), (1, 4, 0, 2, 0), (1, -6, 2, 0, 0),
    (2, 0, 0, -1, 0), (2, 8, 0, 0, 0), (2, 17, 0, 3, 1), (2, 4, -2, 1, 2),
])
def test_block_matches_scan(n, m, p, en, i):
    deg = Degree(m, p)
    assert sorted(e2_block_basis(n, BlockIndex(deg, en, i))) == scan(n, deg, en, i)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3), st.integers(-20, 20), st.integers(-12, 12),
       st.integers(-4, 4), st.integers(0, 8))
def test_block_round_trip(n, m, p, en, i):
    b = BlockIndex(Degree(m, p), en, i)
    basis = e2_block_basis(n, b)
    assert len(set(basis)) == len(basis)
    for M in basis:
        assert M.i == i and M.en == en
        assert monomial_degree(M) == b.degree
        assert block_of(M) == b


def test_v_weight():
    assert [v_weight(k) for k in range(4)] == [0, 1, 3, 7]
