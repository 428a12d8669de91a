"""Named groups used throughout the examples, and the descriptor grammar.

Descriptor strings (case-insensitive, no whitespace)::

    C<n>  D<n>  V4  S<n>  A<n>  PSL2_<q>  PGL2_<q>  SL2_<q>  F_<p>_<q>

``D2`` is accepted as an alias of ``V4``.  ``F_p_q`` is the non-abelian
group of order ``pq`` (``q`` divides ``p - 1``), realised inside the affine
group of GF(p).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from math import factorial, gcd

from sympy import isprime

from .errors import ParseError, ValidationError
from .fields import GF, prime_power
from .group import GroupHandle
from .perm import Permutation


class Family(str, Enum):
    CYCLIC = "Cyclic"
    DIHEDRAL = "Dihedral"
    KLEIN4 = "Klein4"
    SYMMETRIC = "Symmetric"
    ALTERNATING = "Alternating"
    PSL2 = "PSL2"
    PGL2 = "PGL2"
    SL2 = "SL2"
    FROBENIUS = "FrobeniusPQ"


@dataclass(frozen=True)
class GroupDescriptor:
    family: Family
    params: tuple[int, ...] = ()

    def render(self) -> str:
        f, p = self.family, self.params
        if f is Family.KLEIN4:
            return "V4"
        if f is Family.FROBENIUS:
            return f"F_{p[0]}_{p[1]}"
        prefix = {Family.CYCLIC: "C", Family.DIHEDRAL: "D", Family.SYMMETRIC: "S",
                  Family.ALTERNATING: "A", Family.PSL2: "PSL2_", Family.PGL2: "PGL2_",
                  Family.SL2: "SL2_"}[f]
        return f"{prefix}{p[0]}"

    def __str__(self):
        return self.render()

    def order(self) -> int:
        """Order predicted by the closed formula for the family."""
        f, p = self.family, self.params
        if f is Family.CYCLIC:
            return p[0]
        if f is Family.DIHEDRAL:
            return 2 * p[0]
        if f is Family.KLEIN4:
            return 4
        if f is Family.SYMMETRIC:
            return factorial(p[0])
        if f is Family.ALTERNATING:
            return max(1, factorial(p[0]) // 2)
        q = p[0]
        if f is Family.PSL2:
            return q * (q * q - 1) // gcd(2, q - 1)
        if f in (Family.PGL2, Family.SL2):
            return q * (q * q - 1)
        return p[0] * p[1]


_PATTERNS = [
    (re.compile(r"C(\d+)"), Family.CYCLIC),
    (re.compile(r"D(\d+)"), Family.DIHEDRAL),
    (re.compile(r"V4"), Family.KLEIN4),
    (re.compile(r"S(\d+)"), Family.SYMMETRIC),
    (re.compile(r"A(\d+)"), Family.ALTERNATING),
    (re.compile(r"PSL2_(\d+)"), Family.PSL2),
    (re.compile(r"PGL2_(\d+)"), Family.PGL2),
    (re.compile(r"SL2_(\d+)"), Family.SL2),
    (re.compile(r"F_(\d+)_(\d+)"), Family.FROBENIUS),
]


def parse_descriptor(text: str) -> GroupDescriptor:
    if not isinstance(text, str) or not text or any(ch.isspace() for ch in text):
        raise ParseError(f"malformed group descriptor {text!r}")
    upper = text.upper()
    for pattern, family in _PATTERNS:
        m = pattern.fullmatch(upper)
        if m:
            return validate(GroupDescriptor(family, tuple(int(g) for g in m.groups())))
    raise ParseError(f"unrecognised group descriptor {text!r}")


def validate(desc: GroupDescriptor) -> GroupDescriptor:
    f, p = desc.family, desc.params
    if f is Family.KLEIN4:
        return desc
    if f is Family.FROBENIUS:
        pp, qq = p
        if not (isprime(pp) and isprime(qq)):
            raise ValidationError(f"F_{pp}_{qq}: p and q must be prime")
        if (pp - 1) % qq:
            raise ValidationError(f"F_{pp}_{qq}: q must divide p - 1")
        return desc
    n = p[0]
    if n < 1:
        raise ValidationError(f"{desc.render()}: parameter must be >= 1")
    if f is Family.DIHEDRAL:
        if n == 2:
            return GroupDescriptor(Family.KLEIN4)
        if n < 2:
            raise ValidationError("D<n> needs n >= 2")
    if f in (Family.PSL2, Family.PGL2, Family.SL2) and prime_power(n) is None:
        raise ValidationError(f"{desc.render()}: {n} is not a prime power")
    return desc


# -- constructors -----------------------------------------------------------

def _cyclic_shift(n: int) -> Permutation:
    return tuple((i + 1) % n for i in range(n))


def _projective_line_action(F: GF, mats) -> list[Permutation]:
    """Permutations of the q+1 points induced by z -> (az+b)/(cz+d); point q is infinity."""
    q = F.q
    inf = q
    out = []
    for a, b, c, d in mats:
        img = []
        for z in range(q):
            num = int(F.add[F.mul[a, z], b])
            den = int(F.add[F.mul[c, z], d])
            img.append(inf if den == 0 else int(F.mul[num, F.inv[den]]))
        img.append(inf if c == 0 else int(F.mul[a, F.inv[c]]))
        out.append(tuple(img))
    return out


def _vector_action(F: GF, mats) -> list[Permutation]:
    """Permutations of the q^2 - 1 nonzero column vectors; (u, v) has index u*q + v - 1."""
    q = F.q
    out = []
    for a, b, c, d in mats:
        img = []
        for idx in range(1, q * q):
            u, v = divmod(idx, q)
            u2 = int(F.add[F.mul[a, u], F.mul[b, v]])
            v2 = int(F.add[F.mul[c, u], F.mul[d, v]])
            img.append(u2 * q + v2 - 1)
        out.append(tuple(img))
    return out


def _sl2_generators(F: GF):
    # elementary matrices over an additive basis generate SL2
    mats = []
    for t in F.basis():
        mats.append((1, t, 0, 1))
        mats.append((1, 0, t, 1))
    return mats


def frobenius_multiplier(p: int, q: int) -> int:
    """Least ``h`` of multiplicative order exactly ``q`` modulo ``p``."""
    for h in range(2, p):
        if pow(h, q, p) == 1:
            return h
    raise ValidationError(f"no element of order {q} mod {p}")


def group_generators(desc: GroupDescriptor, multiplier: int | None = None) -> list[Permutation]:
    f, p = desc.family, desc.params
    if f is Family.CYCLIC:
        return [_cyclic_shift(p[0])]
    if f is Family.DIHEDRAL:
        n = p[0]
        return [_cyclic_shift(n), tuple((-i) % n for i in range(n))]
    if f is Family.KLEIN4:
        return [(1, 0, 3, 2), (2, 3, 0, 1)]
    if f is Family.SYMMETRIC:
        n = p[0]
        if n <= 2:
            return [_cyclic_shift(n)]
        return [_cyclic_shift(n), (1, 0) + tuple(range(2, n))]
    if f is Family.ALTERNATING:
        n = p[0]
        if n <= 2:
            return [tuple(range(n))]
        three = (1, 2, 0) + tuple(range(3, n))
        if n == 3:
            return [three]
        if n % 2:
            return [three, _cyclic_shift(n)]
        return [three, (0,) + tuple(1 + (i % (n - 1)) for i in range(1, n))]
    if f in (Family.PSL2, Family.PGL2):
        F = GF(p[0])
        mats = _sl2_generators(F)
        if f is Family.PGL2:
            mats.append((F.primitive, 0, 0, 1))
        return _projective_line_action(F, mats)
    if f is Family.SL2:
        F = GF(p[0])
        return _vector_action(F, _sl2_generators(F))
    if f is Family.FROBENIUS:
        pp, qq = p
        h = frobenius_multiplier(pp, qq) if multiplier is None else multiplier
        if pow(h, qq, pp) != 1 or h % pp == 1:
            raise ValidationError(f"{h} does not have order {qq} mod {pp}")
        return [_cyclic_shift(pp), tuple((h * x) % pp for x in range(pp))]
    raise ValidationError(f"unknown family {f}")


def construct_group(desc: GroupDescriptor | str, **kw) -> GroupHandle:
    """Faithful permutation representation of the described group."""
    if isinstance(desc, str):
        desc = parse_descriptor(desc)
    desc = validate(desc)
    G = GroupHandle(group_generators(desc, **kw), label=desc.render(), descriptor=desc)
    if G.order != desc.order():
        raise AssertionError(f"{desc.render()}: built order {G.order}, expected {desc.order()}")
    return G


def classical_moebius(n: int) -> int:
    """Number-theoretic Moebius function."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


# the catalogue of named groups exercised by the cross-checks
_CATALOGUE = (
    [f"C{n}" for n in range(1, 31)]
    + ["V4"] + [f"D{n}" for n in range(3, 21)]
    + [f"S{n}" for n in range(3, 7)] + [f"A{n}" for n in range(4, 7)]
    + [f"PSL2_{q}" for q in (4, 5, 7, 8, 9, 11, 13)]
    + [f"PGL2_{q}" for q in (3, 4, 5, 7, 9)]
    + [f"SL2_{q}" for q in (3, 5, 7, 9)]
    + ["F_7_3", "F_13_3", "F_19_3", "F_11_5", "F_31_5", "F_43_7"]
)


def standard_zoo(max_order: int | None = None) -> list[GroupDescriptor]:
    """Descriptors of the catalogue groups, optionally only those of order <= max_order."""
    out = [parse_descriptor(s) for s in _CATALOGUE]
    if max_order is not None:
        out = [d for d in out if d.order() <= max_order]
    return out
