from fractions import Fraction
from math import prod

import pytest
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from dessins.bsgs import bsgs_order
from dessins.errors import DegreeCapExceeded, TimeBudgetExceeded, UnsupportedFamily
from dessins.perm import compose
from dessins.ucover import (closed_form_ucover, published_dihedral_ucover, published_sl2_5_ucover,
                            ucover_generators, ucover_record)
from dessins.zoo import parse_descriptor

from helpers import census, group, tsystems

A5_GENUS = 2742118830047232000000000000000001   # 1 + (9/20) 60^19, exact


def test_generators_small_cases():
    X, Y = ucover_generators(census("C2"))
    assert len(X) == 6
    assert bsgs_order([X, Y]) == 4
    X, Y = ucover_generators(census("C3"))
    assert bsgs_order([X, Y]) == 9
    X, Y = ucover_generators(census("A5"), regular=True)
    assert len(X) == len(Y) == 19 * 60


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        ucover_generators(census("A5"), regular=True, max_degree=1000)


@pytest.mark.parametrize("n", range(2, 13))
def test_cyclic_covers(n):
    rec = ucover_record(census(f"C{n}"))
    assert rec.order == n * n
    assert rec.type == (n, n, n)
    assert rec.genus == (n - 1) * (n - 2) // 2
    closed = closed_form_ucover(parse_descriptor(f"C{n}"))
    assert (closed.order, closed.type, closed.genus) == (rec.order, rec.type, rec.genus)


def test_c7_closed_form():
    rec = closed_form_ucover(parse_descriptor("C7"))
    assert (rec.order, rec.genus) == (49, 15)


@pytest.mark.parametrize("n", range(3, 9))
def test_dihedral_covers(n):
    rec = ucover_record(census(f"D{n}"))
    closed = closed_form_ucover(parse_descriptor(f"D{n}"))
    assert (closed.order, closed.type, closed.genus) == (rec.order, rec.type, rec.genus)
    if n % 2:
        assert rec.order == 4 * n ** 3
        assert rec.genus == 2 * n ** 3 - 3 * n ** 2 + 1
    else:
        assert rec.order == n ** 3 // 2
        assert rec.genus == 1 + n * n * (n - 3) // 4


@pytest.mark.parametrize("n", [4, 6])
def test_dihedral_even_order_independent_check(n):
    X, Y = ucover_generators(census(f"D{n}"))
    sym = PermutationGroup([SymPerm(list(X)), SymPerm(list(Y))]).order()
    assert sym == n ** 3 // 2
    order, genus = published_dihedral_ucover(n)
    assert order == 4 * n ** 3 != sym


def test_frobenius_cover():
    rec = ucover_record(census("F_7_3"))
    assert rec.order == 7 ** 8 * 9 == 51883209
    assert rec.genus == 22235662
    closed = closed_form_ucover(parse_descriptor("F_7_3"))
    assert (closed.order, closed.type, closed.genus) == (rec.order, rec.type, rec.genus)


@pytest.mark.parametrize("label", ["F_5_2", "F_13_3", "F_11_5"])
def test_frobenius_family(label):
    rec = ucover_record(census(label))
    closed = closed_form_ucover(parse_descriptor(label))
    assert (closed.order, closed.type, closed.genus) == (rec.order, rec.type, rec.genus)


def test_a5_cover():
    rec = ucover_record(census("A5"))
    assert rec.order == 60 ** 19
    assert rec.type == (30, 30, 30)
    assert rec.genus == 1 + Fraction(9, 20) * 60 ** 19 == A5_GENUS
    regular = ucover_record(census("A5"), regular=True)
    assert regular.degree == 1140 and regular.order == rec.order
    closed = closed_form_ucover(parse_descriptor("A5"))
    assert (closed.order, closed.type, closed.genus) == (rec.order, rec.type, rec.genus)
    assert rec.type == (group("A5").exponent,) * 3


def test_a5_orbit_covers():
    c, ts = census("A5"), tsystems("A5")
    parts = [ucover_record(c, i, ts) for i in range(ts.nu)]
    assert sorted(p.order for p in parts) == [60 ** 9, 60 ** 10]
    assert sorted(p.genus for p in parts) == [4534963200000001, 272097792000000001]
    for p in parts:
        assert p.genus == 1 + Fraction(9, 20) * p.order
        assert p.type == (30, 30, 30)


@pytest.mark.parametrize("label", ["A5", "D6", "S4", "PSL2_7", "F_13_3"])
def test_orbit_cover_divisibility(label):
    c, ts = census(label), tsystems(label)
    G = group(label)
    parts = [ucover_record(c, i, ts) for i in range(ts.nu)]
    for p, o in zip(parts, ts.orbits):
        assert (G.order ** o.length) % p.order == 0
        assert p.order % G.order == 0
    if c.r <= 50:
        whole = ucover_record(c)
        assert prod(p.order for p in parts) % whole.order == 0


@pytest.mark.parametrize("label", ["C5", "C8", "V4"])
def test_abelian_cover_is_abelian(label):
    X, Y = ucover_generators(census(label))
    assert compose(X, Y) == compose(Y, X)


def test_sl2_5_quoted_value_arithmetic():
    order, genus = published_sl2_5_ucover()
    assert order == 8 * 60 ** 19
    assert genus == 1 + Fraction(1, 2) * (1 - Fraction(3, 60)) * order
    assert genus == 23155670120398848000000000000000001


def test_sl2_5_cover_by_blocks():
    c = census("SL2_5")
    G = c.group
    z = int(G.center[1])
    # one lift of each A5 class already generates SL2(5)^19
    seen, picks = set(), []
    for cl in c.classes:
        x, y = cl.rep
        key = frozenset(c.class_of_pair(int(a), int(b)) for a in (x, G.mul[x, z]) for b in (y, G.mul[y, z]))
        if key not in seen:
            seen.add(key)
            picks.append(cl.class_id)
    assert len(picks) == 19
    X, Y = ucover_generators(c, picks)
    assert bsgs_order([X, Y]) == 120 ** 19
    rec = ucover_record(c)
    assert rec.order == 2 ** 21 * 60 ** 19
    assert rec.type == (60, 60, 60)
    with pytest.raises(UnsupportedFamily):
        closed_form_ucover(parse_descriptor("SL2_5"))


def test_l27_whole_cover_with_budget():
    c = census("PSL2_7")
    try:
        rec = ucover_record(c, time_budget=120)
    except TimeBudgetExceeded:
        pytest.skip("L2(7) cover exceeded its time budget")
    assert rec.order == 168 ** 57
    assert rec.type == (group("PSL2_7").exponent,) * 3 == (84, 84, 84)
    closed = closed_form_ucover(parse_descriptor("PSL2_7"))
    assert (closed.order, closed.type, closed.genus) == (rec.order, rec.type, rec.genus)


def test_closed_form_unsupported():
    with pytest.raises(UnsupportedFamily):
        closed_form_ucover(parse_descriptor("S4"))
