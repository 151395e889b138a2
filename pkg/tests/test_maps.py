import json

import pytest

from ro2ss.algebra import ALPHA, Degree, cokernel_group, kernel_group
from ro2ss.erring import lam
from ro2ss.maps import (
    CHECKS,
    STANDARD_SHIFTS,
    BlockMismatch,
    E,
    ER,
    GradedMap,
    Window,
    boundary_en_shift,
    check_boundary_formula,
    check_einfty_match,
    check_main_theorem,
    check_order_duality,
    check_periodicity,
    check_rotated_exactness,
    map_matrix,
)
import ro2ss.maps as maps


def entries(M):
    return [[int(x) for x in row] for row in M.entries]


def test_iota_examples():
    assert entries(map_matrix("iota", 1, ER(0, 4), 2)) == [[2]]
    assert entries(map_matrix("iota", 1, ER(0, 8), 4)) == [[1]]


def test_mult_a_on_eta():
    M = map_matrix("mult_a", 1, ER("-a", 1), 1)
    # v1 in degree (1, 1) maps onto eta = a v1
    assert entries(M) == [[1]]
    assert (M.source.describe(), M.target.describe()) == ("Z_(2)", "Z/2")
    assert cokernel_group(M).is_zero()


def test_slots():
    assert ER("0-1a", 3).ro_degree() == Degree(3, 1)
    assert E("1-1a", 4).e_degree() == 4
    assert GradedMap.of("mult_y", 2).target_slot(ER(0, 0)) == ER(-ALPHA, 17)
    with pytest.raises(BlockMismatch):
        GradedMap.of("iota", 1).target_slot(E(0, 0))
    with pytest.raises(ValueError):
        GradedMap.of("mult_b", 1)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("kind", ["mult_a", "mult_x", "mult_y", "mult_period", "iota"])
def test_structural_audit(n, kind):
    g = GradedMap.of(kind, n)
    for V in STANDARD_SHIFTS:
        for j in range(-10, 11):
            slot = ER(V, j)
            tslot = g.target_slot(slot)
            for en in range(-4, 5):
                M = map_matrix(kind, n, slot, en)
                src = slot.basis(n, en)
                tgt = tslot.basis(n, en + g.en_shift)
                for r, row in enumerate(M.entries):
                    for c, x in enumerate(row):
                        if not x:
                            continue
                        if kind == "iota":
                            assert 2 * src[c].monomial.weight() == tgt[r].degree()
                            assert tgt[r].en == src[c].monomial.en
                        else:
                            assert tgt[r].degree - src[c].degree == g.degree_shift
                            assert tgt[r].monomial.en - src[c].monomial.en == g.en_shift
                assert M.is_valid()


@pytest.mark.parametrize("n", [1, 2])
def test_compositions(n):
    L = lam(n)
    sh = GradedMap.of("mult_y", n).en_shift
    for V in STANDARD_SHIFTS:
        for j in range(-12, 13):
            for en in range(-4, 5):
                a = map_matrix("mult_a", n, ER(V - ALPHA, j), en)
                io = map_matrix("iota", n, ER(V, j), en)
                assert (io @ a).is_zero()
                x = map_matrix("mult_x", n, ER(V, j - L), en - sh)
                assert (io @ x).is_zero()
                # mult_y o mult_a = mult_x
                a0 = map_matrix("mult_a", n, ER(V, j - L), en - sh)
                y = map_matrix("mult_y", n, ER(V + ALPHA, j - L), en - sh)
                assert (y @ a0).equals(x)


def small(js, ens=range(-4, 5), shifts=(Degree(0, 0),)):
    return Window.make(js, shifts, ens)


def test_exactness_examples():
    for j in (1, 3, 8):
        assert check_rotated_exactness(1, small([j])).passed
    # eta: im(a) is all of Z/2
    a = map_matrix("mult_a", 1, ER(-ALPHA, 1), 1)
    io = map_matrix("iota", 1, ER(0, 1), 1)
    assert cokernel_group(a).is_zero() and io.target.is_zero()


def test_duality_examples():
    io = map_matrix("iota", 1, ER(0, 4), 2)
    assert cokernel_group(io).describe() == "Z/2"
    a = map_matrix("mult_a", 1, ER(-ALPHA, 3), 2 + boundary_en_shift(1, 4, Degree(0, 0)))
    assert kernel_group(a).describe() == "Z/2"
    for j in (3, 4, 8):
        assert check_order_duality(1, small([j])).passed
    io8 = map_matrix("iota", 1, ER(0, 8), 4)
    assert cokernel_group(io8).is_zero()


def test_duality_negative_control(monkeypatch):
    # without the v_n-exponent shift of the boundary map the bookkeeping breaks
    monkeypatch.setattr(maps, "boundary_en_shift", lambda n, j, V: 0)
    rep = maps.check_order_duality(1, small([4]))
    assert not rep.passed
    assert any(b.j == 4 and b.en == 2 for b in rep.failures())


def test_boundary_examples():
    assert [list(r) for r in map_matrix("one_minus_sigma", 1, E(0, 2), 1).entries] == [[2]]
    for j in (0, 2, 4):
        assert check_boundary_formula(1, small([j], shifts=STANDARD_SHIFTS)).passed


def test_boundary_negative_control():
    rep = check_boundary_formula(1, small(range(-4, 5), shifts=STANDARD_SHIFTS), sign=1)
    assert not rep.passed
    good = check_boundary_formula(1, small(range(-4, 5), shifts=STANDARD_SHIFTS))
    assert good.passed


def test_main_theorem_small():
    rep = check_main_theorem(1, small([2]))
    assert rep.passed
    x = map_matrix("mult_x", 1, ER(0, 1), 1)
    assert entries(x) == [[1]]  # eta * eta = eta^2
    rep2 = check_main_theorem(2, small([17], ens=range(0, 6)))
    assert rep2.passed
    assert "x(2) = a v2^3 σ^-8" in rep2.notes[0]


def test_periodicity_small():
    assert check_periodicity(1, small(range(-8, 9))).passed
    assert check_periodicity(2, small(range(-4, 5))).passed


def test_einfty_match_small():
    assert check_einfty_match(1, small(range(-8, 9), shifts=STANDARD_SHIFTS)).passed


def test_report_json():
    rep = check_rotated_exactness(1, small([0, 1]))
    doc = json.loads(rep.to_json())
    assert doc["schema_version"] == 1
    assert doc["check"] == "exactness"
    assert {"degree", "en", "status"} <= set(doc["blocks"][0])
    assert rep.to_json() == check_rotated_exactness(1, small([0, 1])).to_json()


def test_checks_registry():
    assert set(CHECKS) == {"exactness", "duality", "boundary", "main", "periodicity", "einfty-match"}
