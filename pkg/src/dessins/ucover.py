"""Universal covers of the regular dessins with a given automorphism group.

The automorphism group of the universal cover is the subgroup of G^r
generated by the tuples (x_i) and (y_i) of class representatives.  It is
built here as a pair of block-diagonal permutations and its order is read off
a stabilizer chain, so nothing about its structure is assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np
from sympy.utilities.iterables import partitions

from .bsgs import StabilizerChain
from .census import CensusReport, riemann_hurwitz_genus
from .errors import DegreeCapExceeded, InternalCheckFailed, UnsupportedFamily
from .fields import prime_power
from .formulas import closed_form_r
from .perm import Permutation
from .tsystems import TSystemReport
from .zoo import Family, GroupDescriptor

MAX_DEGREE = 10 ** 6


@dataclass
class UCoverRecord:
    group: str
    r: int
    degree: int | None
    order: int
    type: tuple[int, int, int]
    genus: int
    scope: str = "whole"        # "whole" or "orbit <id>"

    def to_dict(self) -> dict:
        return {"group": self.group, "r": self.r, "degree": self.degree, "order": str(self.order),
                "type": list(self.type), "genus": str(self.genus), "scope": self.scope}


def ucover_generators(census: CensusReport, classes: list[int] | None = None,
                      regular: bool = False, max_degree: int = MAX_DEGREE) -> tuple[Permutation, Permutation]:
    """Block-diagonal generators; block i carries the representative pair of class i.

    Blocks are copies of G's own point set, or of G acting on itself by
    right multiplication when ``regular`` is set.
    """
    G = census.group
    classes = list(range(census.r)) if classes is None else list(classes)
    d = G.order if regular else G.degree
    degree = d * len(classes)
    if degree > max_degree:
        raise DegreeCapExceeded(f"degree {degree} exceeds {max_degree}")
    xs, ys = [], []
    for i, cid in enumerate(classes):
        x, y = census.classes[cid].rep
        if regular:
            bx, by = G.mul[:, x], G.mul[:, y]
        else:
            bx, by = G.elements[x], G.elements[y]
        xs.append(np.asarray(bx, dtype=np.int64) + i * d)
        ys.append(np.asarray(by, dtype=np.int64) + i * d)
    X = tuple(int(v) for v in np.concatenate(xs))
    Y = tuple(int(v) for v in np.concatenate(ys))
    return X, Y


def ucover_record(census: CensusReport, orbit_filter: int | None = None,
                  tsystems: TSystemReport | None = None, regular: bool = False,
                  max_degree: int = MAX_DEGREE, time_budget: float | None = None) -> UCoverRecord:
    """Order, type and genus of U(G), or of U_i(G) when ``orbit_filter`` names an orbit."""
    if orbit_filter is None:
        classes = list(range(census.r))
        scope = "whole"
    else:
        if tsystems is None:
            raise ValueError("orbit_filter needs a T-system report")
        classes = list(tsystems.orbits[orbit_filter].members)
        scope = f"orbit {orbit_filter}"
    G = census.group
    X, Y = ucover_generators(census, classes, regular, max_degree)
    order = StabilizerChain([X, Y], len(X), time_budget=time_budget).order()
    n = G.order
    k = len(classes)
    if (n ** k) % order or order % n:
        raise InternalCheckFailed(f"|cover| = {order} is not between |G| and |G|^{k} in the divisor order")
    orders = G.orders
    mul, inv = G.mul, G.inv
    l = lcm(*(int(orders[census.classes[c].rep[0]]) for c in classes))
    m = lcm(*(int(orders[census.classes[c].rep[1]]) for c in classes))
    zs = []
    for c in classes:
        x, y = census.classes[c].rep
        zs.append(int(orders[inv[mul[x, y]]]))
    t = (l, m, lcm(*zs))
    return UCoverRecord(G.label, k, len(X), order, t, riemann_hurwitz_genus(*t, order), scope)


# -- closed forms -----------------------------------------------------------

def psl2_exponent(q: int) -> int:
    p, _ = prime_power(q)
    d = 2 if q % 2 else 1
    return lcm(p, (q - 1) // d, (q + 1) // d)


def alternating_exponent(n: int) -> int:
    e = 1
    for part in partitions(n):
        transpositions = sum((k - 1) * mult for k, mult in part.items())
        if transpositions % 2 == 0:
            e = lcm(e, *part.keys())
    return e


def _simple_exponent(desc: GroupDescriptor) -> int | None:
    f, p = desc.family, desc.params
    if f is Family.ALTERNATING and p[0] >= 5:
        return alternating_exponent(p[0])
    if f is Family.PSL2 and p[0] >= 4:
        return psl2_exponent(p[0])
    if f is Family.PGL2 and p[0] >= 4 and p[0] % 2 == 0:
        return psl2_exponent(p[0])
    return None


def published_dihedral_ucover(n: int) -> tuple[int, int]:
    """(order, genus) of U(D_n) as usually quoted: 4n^3 with genus by parity of n.

    Correct for odd n only; for even n the true cover is smaller (see
    ``closed_form_ucover``).  Kept for comparison.
    """
    if n % 2:
        return 4 * n ** 3, 2 * n ** 3 - 3 * n ** 2 + 1
    return 4 * n ** 3, 2 * n ** 3 - 6 * n ** 2 + 1


def published_sl2_5_ucover() -> tuple[int, int]:
    """(order, genus) of U(SL2(5)) as usually quoted: 8 * 60^19, type (60, 60, 60).

    This is only the arithmetic of the quoted value.  The block construction
    gives a larger group: one lift of each of the 19 classes of A5 already
    generates SL2(5)^19, and the full cover has order 2^21 * 60^19.
    """
    order = 8 * 60 ** 19
    return order, riemann_hurwitz_genus(60, 60, 60, order)


def closed_form_ucover(desc: GroupDescriptor) -> UCoverRecord:
    """Order, type and genus of U(G) from the family formulas alone."""
    f, p = desc.family, desc.params
    label = desc.render()
    if f is Family.CYCLIC:
        n = p[0]
        rec = UCoverRecord(label, closed_form_r(desc), None, n * n, (n, n, n), (n - 1) * (n - 2) // 2)
    elif f is Family.KLEIN4:
        # same cover as C2: abelian 2-generator of exponent 2
        rec = UCoverRecord(label, 1, None, 4, (2, 2, 2), 0)
    elif f is Family.DIHEDRAL:
        n = p[0]
        if n % 2:
            rec = UCoverRecord(label, 3, None, 4 * n ** 3, (2 * n, 2 * n, 2 * n), 2 * n ** 3 - 3 * n ** 2 + 1)
        else:
            # every N lies in the index-4 subgroup F'F^2, and F'F^2/N is
            # cyclic of order n/2, which caps the cover at 4 (n/2)^3
            rec = UCoverRecord(label, 3, None, n ** 3 // 2, (n, n, n), 1 + n * n * (n - 3) // 4)
    elif f is Family.FROBENIUS:
        pp, qq = p
        order = pp ** (qq * qq - 1) * qq * qq
        genus_twice = pp ** (qq * qq - 2) * qq * (pp * qq - 3)
        if genus_twice % 2:
            raise InternalCheckFailed("odd numerator in Frobenius genus formula")
        e = pp * qq
        rec = UCoverRecord(label, qq * qq - 1, None, order, (e, e, e), 1 + genus_twice // 2)
    else:
        e = _simple_exponent(desc)
        if e is None:
            raise UnsupportedFamily(f"no closed form for the universal cover of {label}")
        r = closed_form_r(desc)
        n = desc.order()
        order = n ** r
        num = (e - 3) * order
        if num % (2 * e):
            raise InternalCheckFailed("non-integral genus")
        rec = UCoverRecord(label, r, None, order, (e, e, e), 1 + num // (2 * e))
    if rec.genus != riemann_hurwitz_genus(*rec.type, rec.order):
        raise InternalCheckFailed(f"{label}: family genus formula disagrees with Riemann-Hurwitz")
    return rec
