import pytest
from hypothesis import given, settings, strategies as st

from ro2ss.algebra import Degree
from ro2ss.erring import (
    DegreeMismatch,
    ERBasisElement,
    NotInRing,
    a_power,
    distinguished,
    er_block_basis,
    er_group,
    er_product,
    lam,
    max_filtration,
    normalize,
    one,
    period_length,
)
from ro2ss.pages import BlockIndex, monomial


def labels(n, m, p, en):
    return [g.label() for g in er_block_basis(n, BlockIndex(Degree(m, p), en))]


def test_block_examples():
    assert labels(1, 1, 0, 1) == ["a v1"]
    assert labels(1, 4, 0, 2) == ["2·v1^2 σ^-2"]
    assert labels(1, 3, 1, 3) == ["a^2 v1^3"]
    assert er_group(1, Degree(1, 0), 1).describe() == "Z/2"
    assert er_group(1, Degree(4, 0), 2).describe() == "Z_(2)"


def test_ko_pattern_from_presentation():
    pattern = ["Z_(2)", "Z/2", "Z/2", "0", "Z_(2)", "0", "0", "0"]
    for j in range(-16, 33):
        groups = [er_group(1, Degree(j, 0), en) for en in range(-12, 20)]
        nonzero = [g.describe() for g in groups if not g.is_zero()]
        assert (nonzero or ["0"]) == [pattern[j % 8]], j


@pytest.mark.parametrize("n, value", [(1, 1), (2, 17), (3, 97)])
def test_lambda(n, value):
    assert lam(n) == value


@pytest.mark.parametrize("n, value", [(1, 8), (2, 48), (3, 224)])
def test_period(n, value):
    assert period_length(n) == value


@pytest.mark.parametrize("n", [1, 2, 3])
def test_distinguished_degrees(n):
    y = distinguished(n, "y")
    x = distinguished(n, "x")
    assert y.degree == Degree(lam(n), 1)
    assert x.degree == Degree(lam(n), 0)
    assert distinguished(n, "y_inverse").degree == Degree(-lam(n), -1)
    assert distinguished(n, "period").degree == Degree(period_length(n), 0)


def test_named_elements():
    assert distinguished(1, "y").element.label() == "v1"
    assert distinguished(1, "x").element.label() == "a v1"
    assert distinguished(2, "y").element.label() == "v2^3 σ^-8"
    assert distinguished(2, "x").element.label() == "a v2^3 σ^-8"
    with pytest.raises(ValueError):
        distinguished(1, "z")


def test_y_is_invertible():
    for n in (1, 2, 3):
        y = distinguished(n, "y").element
        yi = distinguished(n, "y_inverse").element
        assert er_product(n, (1, y), (1, yi)) == (1, one(n))


def test_alpha_squared_is_four_beta():
    alpha = ERBasisElement.of(monomial(1, en=2, t=-1))
    assert alpha.w == 1
    c, g = er_product(1, (1, alpha), (1, alpha))
    assert c == 4
    assert g.label() == "v1^4 σ^-4"


def test_eta_cubed_vanishes():
    eta = ERBasisElement.of(monomial(1, i=1, en=1))
    eta2 = er_product(1, (1, eta), (1, eta))
    assert eta2[1].label() == "a^2 v1^2"
    assert er_product(1, eta2, (1, eta)) is None
    # a * (a^2 v1) = 0 too
    a2v = ERBasisElement.of(monomial(1, i=2, en=1))
    assert er_product(1, (1, ERBasisElement.of(monomial(1, i=1))), (1, a2v)) is None


def test_a_powers():
    for n in (1, 2):
        top = max_filtration(n)
        assert a_power(n, top + 1) is None
        assert a_power(n, top) is not None


def test_two_a_is_zero():
    a = ERBasisElement.of(monomial(1, i=1))
    assert er_product(1, (2, a), (1, one(1))) is None
    assert normalize(2, 2, monomial(2, i=1)) is None


def test_not_in_ring():
    with pytest.raises(NotInRing):
        ERBasisElement.of(monomial(1, i=3, en=1))
    with pytest.raises(NotInRing):
        normalize(1, 1, monomial(1, en=2, t=-1))  # v1^2 sigma^-2 alone is not a class


def test_unit_law():
    for n in (1, 2):
        for en in range(-2, 3):
            for g in er_block_basis(n, BlockIndex(Degree(4 * en, 0), en)):
                assert er_product(n, (1, one(n)), (1, g)) == (1, g)


def gens(n):
    out = []
    for m in range(-10, 11):
        for p in range(-3, 4):
            for en in range(-2, 3):
                out.extend(er_block_basis(n, BlockIndex(Degree(m, p), en)))
    return out


GENS = {n: gens(n) for n in (1, 2)}


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 2), st.data())
def test_associative_and_commutative(n, data):
    pick = st.sampled_from(GENS[n])
    x, y, z = (1, data.draw(pick)), (1, data.draw(pick)), (1, data.draw(pick))
    assert er_product(n, x, y) == er_product(n, y, x)
    xy = er_product(n, x, y)
    yz = er_product(n, y, z)
    left = er_product(n, xy, z) if xy else None
    right = er_product(n, x, yz) if yz else None
    assert left == right


def test_degree_self_check_raises(monkeypatch):
    # with a wrong shift the element no longer lands where it should
    import ro2ss.erring as er
    monkeypatch.setattr(er, "lam", lambda n: 18)
    with pytest.raises(DegreeMismatch):
        er.distinguished(2, "y")
