import pytest
from sympy import primerange

from dessins.errors import UnsupportedFamily, ValidationError
from dessins.formulas import (SuzukiParam, closed_form_r, l2p_epsilon, r_cyclic, r_l2_2e, r_l2p,
                              r_suzuki)
from dessins.zoo import parse_descriptor, standard_zoo

from helpers import census


def test_cyclic():
    assert r_cyclic(1) == 1
    assert r_cyclic(12) == 24
    assert r_cyclic(7) == 8
    with pytest.raises(ValidationError):
        r_cyclic(0)


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclic_against_census(n):
    assert r_cyclic(n) == census(f"C{n}").r


def test_l2p_values():
    assert [r_l2p(p) for p in (5, 7, 11, 13)] == [19, 57, 254, 495]
    assert l2p_epsilon(11) == 40      # 11 = 1 mod 5, 3 mod 8
    assert l2p_epsilon(7) == 11       # 7 = 2 mod 5, 7 mod 8
    assert l2p_epsilon(13) == 2       # 13 = 3 mod 5, 5 mod 8
    assert l2p_epsilon(31) == 49      # 31 = 1 mod 5, 7 mod 8
    with pytest.raises(ValidationError):
        r_l2p(9)


def test_l2p_divisibility_and_growth():
    for p in primerange(5, 400):
        r = r_l2p(p)
        assert r > 0
        # r <= |G| / |Out G| = p(p^2 - 1)/4
        assert r <= p * (p * p - 1) // 4


def test_l2_2e():
    assert r_l2_2e(2) == 19           # L2(4) = A5
    assert r_l2_2e(3) == 142
    for e in range(2, 40):
        assert r_l2_2e(e) == r_l2_2e(e, naive=True)
    with pytest.raises(ValidationError):
        r_l2_2e(1)


def test_suzuki():
    assert r_suzuki(3) == 9534
    assert SuzukiParam(3).render() == "Sz_8"
    assert closed_form_r(SuzukiParam(3)) == 9534
    for e in range(3, 40, 2):
        assert r_suzuki(e) == r_suzuki(e, naive=True)
    for bad in (1, 2, 4):
        with pytest.raises(ValidationError):
            r_suzuki(bad)


def _with_closed_form():
    out = []
    for d in standard_zoo():
        try:
            closed_form_r(d)
        except UnsupportedFamily:
            continue
        out.append(d)
    return out


@pytest.mark.parametrize("desc", _with_closed_form(), ids=lambda d: d.render())
def test_closed_form_matches_census(desc):
    assert closed_form_r(desc) == census(desc.render()).r


def test_named_values():
    values = {s: closed_form_r(parse_descriptor(s)) for s in
              ("A4", "S4", "A5", "A6", "SL2_5", "V4", "D9", "PSL2_8", "PSL2_13", "F_11_5")}
    assert values == {"A4": 4, "S4": 9, "A5": 19, "A6": 53, "SL2_5": 76, "V4": 1, "D9": 3,
                      "PSL2_8": 142, "PSL2_13": 495, "F_11_5": 24}


def test_unsupported():
    with pytest.raises(UnsupportedFamily):
        closed_form_r(parse_descriptor("PGL2_7"))
    with pytest.raises(UnsupportedFamily):
        closed_form_r(parse_descriptor("S7"))
