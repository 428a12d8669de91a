"""Closed-form counts r(G) of regular dessins for families with known formulas."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import divisors, isprime, primefactors

from .errors import UnsupportedFamily, ValidationError
from .fields import prime_power
from .zoo import Family, GroupDescriptor, classical_moebius


@dataclass(frozen=True)
class SuzukiParam:
    """The simple Suzuki group Sz(2^e), e odd and > 1 (formula only, never constructed)."""
    e: int

    def render(self) -> str:
        return f"Sz_{2 ** self.e}"


# tabulated values for small groups without a family formula
_KNOWN = {
    "A4": 4, "S4": 9, "A5": 19, "A6": 53, "SL2_5": 76,
}


def r_cyclic(n: int) -> int:
    """n * prod over primes p | n of (1 + 1/p)."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    r = n
    for p in primefactors(n):
        r = r // p * (p + 1)
    return r


def l2p_epsilon(p: int) -> int:
    a = p % 5
    b = p % 8
    five_is_one = a in (1, 4)    # p = +-1 mod 5; p = 5 joins the +-2 branch
    eight_is_one = b in (1, 7)
    if five_is_one:
        return 49 if eight_is_one else 40
    return 11 if eight_is_one else 2


def r_l2p(p: int) -> int:
    """r(L2(p)) for primes p >= 5."""
    if p < 5 or not isprime(p):
        raise ValidationError("L2(p) formula needs a prime p >= 5")
    num = (p + 1) * (p * p - 2 * p - 1)
    if num % 4:
        raise AssertionError("(p+1)(p^2-2p-1) not divisible by 4")
    return num // 4 - l2p_epsilon(p)


def _l2_term(f: int) -> int:
    return 2 ** f * (2 ** (2 * f) - 2 ** f - 3)


def _sz_term(f: int) -> int:
    return 2 ** f * (2 ** (4 * f) - 2 ** (3 * f) - 9)


def _divisor_sum_naive(e: int, term) -> int:
    total = 0
    for f in range(1, e + 1):
        if e % f == 0:
            total += classical_moebius(e // f) * term(f)
    if total % e:
        raise AssertionError("divisor sum not divisible by e")
    return total // e


@lru_cache(maxsize=None)
def _mu_cached(n: int) -> int:
    return classical_moebius(n)


def _divisor_sum_memo(e: int, term) -> int:
    total = sum(_mu_cached(e // f) * term(f) for f in divisors(e))
    if total % e:
        raise AssertionError("divisor sum not divisible by e")
    return total // e


def r_l2_2e(e: int, naive: bool = False) -> int:
    """r(L2(2^e)) for e > 1."""
    if e <= 1:
        raise ValidationError("L2(2^e) formula needs e > 1")
    return (_divisor_sum_naive if naive else _divisor_sum_memo)(e, _l2_term)


def r_suzuki(e: int, naive: bool = False) -> int:
    """r(Sz(2^e)) for odd e > 1."""
    if e <= 1 or e % 2 == 0:
        raise ValidationError("Sz(2^e) formula needs odd e > 1")
    return (_divisor_sum_naive if naive else _divisor_sum_memo)(e, _sz_term)


def closed_form_r(desc: GroupDescriptor | SuzukiParam) -> int:
    """Number of regular dessins with automorphism group ``desc``, from a published formula."""
    if isinstance(desc, SuzukiParam):
        return r_suzuki(desc.e)
    f, p = desc.family, desc.params
    label = desc.render()
    if label in _KNOWN:
        return _KNOWN[label]
    if f is Family.CYCLIC:
        return r_cyclic(p[0])
    if f is Family.DIHEDRAL:
        return 3
    if f is Family.KLEIN4:
        return 1
    if f is Family.FROBENIUS:
        return p[1] ** 2 - 1
    if f in (Family.SYMMETRIC, Family.ALTERNATING) and p[0] <= 3:
        # trivial, C2, C3 and S3 = D3
        return {(Family.SYMMETRIC, 1): 1, (Family.SYMMETRIC, 2): 3, (Family.SYMMETRIC, 3): 3,
                (Family.ALTERNATING, 1): 1, (Family.ALTERNATING, 2): 1,
                (Family.ALTERNATING, 3): 4}[(f, p[0])]
    if f in (Family.PSL2, Family.PGL2):
        q = p[0]
        pp, e = prime_power(q)
        if q == 2:
            return 3       # S3
        if f is Family.PSL2 and q == 3:
            return 4       # A4
        if f is Family.PGL2 and q == 3:
            return 9       # S4
        if pp == 2:
            return r_l2_2e(e)   # PGL2(2^e) = PSL2(2^e)
        if f is Family.PSL2 and e == 1:
            return r_l2p(q)
        if f is Family.PSL2 and q == 9:
            return 53      # A6
    raise UnsupportedFamily(f"no closed form for r({label})")
