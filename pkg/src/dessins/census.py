"""Automorphism groups, generating pairs and the census of regular dessins.

A regular dessin with automorphism group G is an Aut(G)-orbit of
generating pairs (x, y) of G.  Its type is the triple of orders of x, y
and z = (xy)^-1 and its genus follows from Riemann-Hurwitz.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .bsgs import StabilizerChain
from .errors import CapExceeded, InternalCheckFailed, NotApplicable
from .group import GroupHandle
from .lattice import (MoebiusTable, SubgroupLattice, enumerate_subgroups, maximal_classes,
                      maximal_membership, moebius_table, phi2_via_moebius)

log = logging.getLogger(__name__)

CENSUS_CAP = 5_000
_CHUNK = 2048


def riemann_hurwitz_genus(l: int, m: int, n: int, order: int) -> int:
    """Genus 1 + (1 - 1/l - 1/m - 1/n) |G| / 2 as an exact integer."""
    num = (l * m * n - m * n - l * n - l * m) * order
    den = 2 * l * m * n
    if num % den:
        raise InternalCheckFailed(f"non-integral genus for type {(l, m, n)} and order {order}")
    g = 1 + num // den
    if g < 0:
        raise InternalCheckFailed(f"negative genus for type {(l, m, n)}")
    return g


# -- generating pairs ---------------------------------------------------------

def generating_pair_matrix(G: GroupHandle, L: SubgroupLattice) -> np.ndarray:
    """``gp[x, y]`` is True iff no maximal subgroup contains both x and y."""
    masks = maximal_membership(L)
    n = G.order
    out = np.empty((n, n), dtype=bool)
    for x in range(n):
        out[x] = ~((masks & masks[x]) != 0).any(axis=1)
    return out


def generating_pairs_count(G: GroupHandle, L: SubgroupLattice) -> int:
    """phi2(G) counted directly from maximal-subgroup membership."""
    return int(generating_pair_matrix(G, L).sum())


# -- automorphisms ---------------------------------------------------------

@dataclass
class AutGroup:
    maps: np.ndarray            # (|Aut|, |G|), row = image of every element id
    generators: list[int]       # rows of ``maps`` generating Aut(G)
    order: int
    inn_order: int
    out_order: int

    @cached_property
    def element_orbits(self) -> np.ndarray:
        """Aut-orbit id of each element; orbits numbered by their least element."""
        least = self.maps.min(axis=0)
        _, ids = np.unique(least, return_inverse=True)
        return ids.astype(np.int64)


def _label_candidates(mul, tree, cand_a, cand_b, n) -> np.ndarray:
    """Images of every element under the maps a -> cand_a, b -> cand_b (one row per candidate)."""
    F = np.zeros((len(cand_a), n), dtype=np.int32)
    imgs = (cand_a, cand_b)
    for g, parent, s in tree:
        F[:, g] = mul[F[:, parent], imgs[s]]
    return F


def _cayley_tree(mul, a: int, b: int, n: int) -> list[tuple[int, int, int]]:
    """BFS spanning tree of the Cayley graph: (element, parent, generator index) with element = parent * gen."""
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    tree = []
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for s, t in enumerate((a, b)):
            h = int(mul[g, t])
            if not seen[h]:
                seen[h] = True
                tree.append((h, g, s))
                queue.append(h)
    if not seen.all():
        raise InternalCheckFailed("chosen pair does not generate G")
    return tree


def _check_chunk(args):
    mul, tree, ca, cb, n, a, b = args
    F = _label_candidates(mul, tree, ca, cb, n)
    ok = np.ones(len(ca), dtype=bool)
    # edge consistency: f(g t) = f(g) f(t) for both generators
    for t, img in ((a, ca), (b, cb)):
        ok &= (F[:, mul[:, t]] == mul[F, img[:, None]]).all(axis=1)
    # bijectivity
    srt = np.sort(F[ok], axis=1)
    good = (srt == np.arange(n)).all(axis=1)
    idx = np.flatnonzero(ok)
    ok[idx[~good]] = False
    return F[ok]


def automorphism_group(G: GroupHandle, lattice: SubgroupLattice | None = None,
                       pairs: np.ndarray | None = None, threads: int = 1) -> AutGroup:
    """All automorphisms of G as permutations of element ids, sorted lexicographically.

    A generating pair (a, b) is fixed; an automorphism is determined by the
    images (a', b'), which must again be a generating pair with the same
    element orders and the same order of the product.  Each candidate is
    checked by labelling a spanning tree of the Cayley graph and verifying
    every edge.
    """
    n = G.order
    if n > CENSUS_CAP:
        raise CapExceeded(f"|G| = {n} exceeds census cap {CENSUS_CAP}")
    if n == 1:
        maps = np.zeros((1, 1), dtype=np.int32)
        return AutGroup(maps, [], 1, 1, 1)
    mul, orders = G.mul, G.orders
    if pairs is None:
        pairs = generating_pair_matrix(G, lattice or enumerate_subgroups(G))
    counts = Counter(orders.tolist())
    xs, ys = np.nonzero(pairs)
    cost = np.array([counts[o1] * counts[o2] for o1, o2 in zip(orders[xs], orders[ys])])
    k = int(np.argmin(cost))  # first minimum is lexicographically least (row-major order)
    a, b = int(xs[k]), int(ys[k])
    prod_order = orders[mul[a, b]]
    sel = (orders[xs] == orders[a]) & (orders[ys] == orders[b]) & (orders[mul[xs, ys]] == prod_order)
    cand_a, cand_b = xs[sel].astype(np.int64), ys[sel].astype(np.int64)
    tree = _cayley_tree(mul, a, b, n)
    chunks = [(mul, tree, cand_a[i:i + _CHUNK], cand_b[i:i + _CHUNK], n, a, b)
              for i in range(0, len(cand_a), _CHUNK)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(_check_chunk, chunks))
    else:
        results = [_check_chunk(c) for c in chunks]
    maps = np.concatenate(results, axis=0)
    maps = maps[np.lexsort(maps.T[::-1])]
    order = len(maps)
    inn = n // len(G.center)
    if order % inn:
        raise InternalCheckFailed(f"|Inn G| = {inn} does not divide |Aut G| = {order}")
    gens: list[int] = []
    chain = None
    for i in range(1, order):
        if chain is not None and chain.contains(maps[i]):
            continue
        gens.append(i)
        chain = StabilizerChain([maps[j] for j in gens], n)
        if chain.order() == order:
            break
    if chain is not None and chain.order() != order:
        raise InternalCheckFailed("automorphism generators do not generate Aut(G)")
    return AutGroup(maps, gens, order, inn, order // inn)


def check_automorphisms(G: GroupHandle, aut: AutGroup, samples: int = 10_000, seed: int = 0) -> None:
    """f(ab) = f(a) f(b) for every map: all triples when |G| <= 200, else a random sample."""
    mul, n = G.mul, G.order
    if n <= 200:
        for f in aut.maps:
            if not (f[mul] == mul[np.ix_(f, f)]).all():
                raise InternalCheckFailed("map is not a homomorphism")
        return
    rng = np.random.default_rng(seed)
    k = rng.integers(len(aut.maps), size=samples)
    a = rng.integers(n, size=samples)
    b = rng.integers(n, size=samples)
    F = aut.maps[k]
    rows = np.arange(samples)
    if not (F[rows, mul[a, b]] == mul[F[rows, a], F[rows, b]]).all():
        raise InternalCheckFailed("map is not a homomorphism")


# -- census ---------------------------------------------------------------

@dataclass
class DessinClass:
    class_id: int
    rep: tuple[int, int]
    type: tuple[int, int, int]
    genus: int
    commutator_order: int
    higman_label: tuple[int, int]
    reflexible: bool
    signature: tuple[int, int, int]            # Aut-orbit ids of x, y, z
    conjugacy_pattern: tuple[bool, bool, bool]  # G-conjugacy of (x,y), (y,z), (z,x)

    def to_dict(self) -> dict:
        return {
            "class_id": self.class_id, "rep": list(self.rep), "type": list(self.type),
            "genus": str(self.genus), "commutator_order": self.commutator_order,
            "higman_label": list(self.higman_label), "reflexible": self.reflexible,
            "signature": list(self.signature), "conjugacy_pattern": list(self.conjugacy_pattern),
        }


@dataclass
class CensusReport:
    group: GroupHandle
    order: int
    aut_order: int
    out_order: int
    r: int
    phi2: int
    classes: list[DessinClass]
    moebius_r: int
    phi2_moebius: int
    by_type_genus: dict[tuple[tuple[int, int, int], int], int]
    # working data kept for T-systems and universal covers
    aut: AutGroup = field(repr=False, default=None)
    lattice: SubgroupLattice = field(repr=False, default=None)
    moebius: MoebiusTable = field(repr=False, default=None)
    class_of: np.ndarray = field(repr=False, default=None)

    def failures(self) -> list[str]:
        out = []
        if self.r != len(self.classes):
            out.append(f"r = {self.r} but {len(self.classes)} classes")
        if self.moebius_r != self.r:
            out.append(f"Moebius count {self.moebius_r} != orbit count {self.r}")
        if self.phi2 != self.phi2_moebius:
            out.append(f"direct phi2 {self.phi2} != Moebius phi2 {self.phi2_moebius}")
        if self.phi2 != self.r * self.aut_order:
            out.append(f"phi2 {self.phi2} != r * |Aut G| = {self.r * self.aut_order}")
        return out

    def class_of_pair(self, x: int, y: int) -> int:
        c = int(self.class_of[x, y])
        if c < 0:
            raise ValueError(f"({x}, {y}) is not a generating pair")
        return c

    def genus_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(c.genus for c in self.classes).items()))

    def to_dict(self) -> dict:
        return {
            "order": str(self.order), "aut_order": str(self.aut_order),
            "out_order": str(self.out_order), "r": self.r, "moebius_r": self.moebius_r,
            "phi2": str(self.phi2),
            "classes": [c.to_dict() for c in self.classes],
            "by_type_genus": [
                {"type": list(t), "genus": str(g), "count": k}
                for (t, g), k in sorted(self.by_type_genus.items())
            ],
        }


def dessin_census(G: GroupHandle, lattice: SubgroupLattice | None = None,
                  moebius: MoebiusTable | None = None, threads: int = 1,
                  strict: bool = True) -> CensusReport:
    """One DessinClass per Aut(G)-orbit of generating pairs.

    The representative of each class is its lexicographically least pair
    (x, y) and classes are numbered in that order.  With ``strict`` the
    orbit count, the Moebius count and phi2 = r |Aut G| must all agree.
    """
    n = G.order
    if n > CENSUS_CAP:
        raise CapExceeded(f"|G| = {n} exceeds census cap {CENSUS_CAP}")
    L = lattice or enumerate_subgroups(G)
    M = moebius or moebius_table(L)
    pairs = generating_pair_matrix(G, L)
    aut = automorphism_group(G, L, pairs, threads=threads)
    mul, inv, orders = G.mul, G.inv, G.orders
    maps = aut.maps

    class_of = np.full((n, n), -1, dtype=np.int32)
    flat = class_of.ravel()
    reps: list[tuple[int, int]] = []
    for idx in np.flatnonzero(pairs.ravel()):
        if flat[idx] >= 0:
            continue
        x, y = divmod(int(idx), n)
        orbit = maps[:, x].astype(np.int64) * n + maps[:, y]
        if len(np.unique(orbit)) != aut.order:
            raise InternalCheckFailed("Aut(G) does not act semiregularly on generating pairs")
        flat[orbit] = len(reps)
        reps.append((x, y))

    orbit_id = aut.element_orbits
    conj = G.conjugacy_classes()
    classes = []
    for cid, (x, y) in enumerate(reps):
        z = int(inv[mul[x, y]])
        l, m, k = int(orders[x]), int(orders[y]), int(orders[z])
        c = int(mul[mul[mul[inv[x], inv[y]], x], y])
        classes.append(DessinClass(
            class_id=cid,
            rep=(x, y),
            type=(l, m, k),
            genus=riemann_hurwitz_genus(l, m, k, n),
            commutator_order=int(orders[c]),
            higman_label=tuple(sorted((int(orbit_id[c]), int(orbit_id[inv[c]])))),
            reflexible=bool(class_of[inv[x], inv[y]] == cid),
            signature=(int(orbit_id[x]), int(orbit_id[y]), int(orbit_id[z])),
            conjugacy_pattern=(bool(conj[x] == conj[y]), bool(conj[y] == conj[z]),
                               bool(conj[z] == conj[x])),
        ))

    phi2 = int(pairs.sum())
    phi2_m = phi2_via_moebius(L, M)
    if phi2_m % aut.order:
        raise InternalCheckFailed(f"|Aut G| = {aut.order} does not divide phi2 = {phi2_m}")
    report = CensusReport(
        group=G, order=n, aut_order=aut.order, out_order=aut.out_order, r=len(classes),
        phi2=phi2, classes=classes, moebius_r=phi2_m // aut.order, phi2_moebius=phi2_m,
        by_type_genus=dict(Counter((c.type, c.genus) for c in classes)),
        aut=aut, lattice=L, moebius=M, class_of=class_of,
    )
    if strict and report.failures():
        raise InternalCheckFailed("; ".join(report.failures()))
    return report


# -- bounds for simple groups ---------------------------------------------

def simple_bound_window(G: GroupHandle, L: SubgroupLattice,
                        aut: AutGroup | None = None) -> tuple[Fraction, Fraction]:
    """``(lower, upper)`` with lower <= r(G) <= upper for perfect, centreless G.

    upper = |G| / |Out G|, lower = upper * (1 - sum 1/|G:M_i|) over the
    conjugacy classes of maximal subgroups.
    """
    if len(G.center) != 1:
        raise NotApplicable(f"{G.label}: centre is not trivial")
    if not G.is_perfect:
        raise NotApplicable(f"{G.label}: group is not perfect")
    if aut is None:
        aut = automorphism_group(G, L)
    upper = Fraction(G.order, aut.out_order)
    s = sum((Fraction(1, c.index) for c in maximal_classes(L)), Fraction(0))
    return (1 - s) * upper, upper
