"""Subgroup lattices and the Moebius function of a finite group.

Subgroups are stored as Python integers used as bitsets over element ids,
so containment is ``a & b == a`` and intersection is ``a & b``.

Enumeration starts from the cyclic subgroups and closes under joins with
cyclic subgroups until nothing new appears.  Only one representative per
conjugacy class is joined; the rest of each class is produced by conjugating
with the generators of G, which yields the same node set as joining every
subgroup.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import CapExceeded, InternalCheckFailed, NegativeResult
from .group import GroupHandle

log = logging.getLogger(__name__)

MAX_SUBGROUPS = 250_000


def mask_to_int(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def int_to_mask(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def int_to_ids(bits: int, n: int) -> np.ndarray:
    return np.flatnonzero(int_to_mask(bits, n))


@dataclass
class SubgroupNode:
    index: int
    members: int
    order: int
    generator_witness: tuple[int, ...]
    is_maximal: bool = False
    class_id: int = -1


@dataclass
class SubgroupLattice:
    group: GroupHandle
    nodes: list[SubgroupNode]
    # conjugacy classes as lists of node indices; None when classes are not tracked
    classes: list[list[int]] | None = None
    _by_members: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_members = {nd.members: nd.index for nd in self.nodes}

    def __len__(self):
        return len(self.nodes)

    def find(self, members: int) -> int | None:
        return self._by_members.get(members)

    @property
    def top(self) -> SubgroupNode:
        return self.nodes[-1]

    @property
    def bottom(self) -> SubgroupNode:
        return self.nodes[0]

    def contains(self, big: int, small: int) -> bool:
        """Whether node ``small`` is a subgroup of node ``big``."""
        s = self.nodes[small].members
        return self.nodes[big].members & s == s

    def proper_supergroups(self, i: int) -> list[int]:
        h = self.nodes[i]
        out = []
        for k in self.nodes[i + 1:]:
            if k.order > h.order and k.order % h.order == 0 and k.members & h.members == h.members:
                out.append(k.index)
        return out

    def maximal_nodes(self) -> list[SubgroupNode]:
        return [nd for nd in self.nodes if nd.is_maximal]

    def representatives(self) -> list[int]:
        if self.classes is None:
            return [nd.index for nd in self.nodes]
        return [cls[0] for cls in self.classes]


# -- enumeration --------------------------------------------------------------

def _conjugation_maps(G: GroupHandle) -> list[np.ndarray]:
    mul, inv = G.mul, G.inv
    ids = np.arange(G.order)
    # i -> t^-1 i t for each generator t
    return [mul[mul[inv[t], ids], t] for t in G.generator_ids]


def _cyclic_subgroups(G: GroupHandle) -> list[tuple[int, np.ndarray, tuple[int, ...]]]:
    mul = G.mul
    seen: dict[int, int] = {}
    out = []
    for g in range(G.order):
        mask = np.zeros(G.order, dtype=bool)
        x = 0
        while True:
            mask[x] = True
            x = int(mul[x, g])
            if x == 0:
                break
        key = mask_to_int(mask)
        if key not in seen:
            seen[key] = g
            out.append((key, mask, (g,) if g else ()))
    return out


def enumerate_subgroups(G: GroupHandle, max_subgroups: int = MAX_SUBGROUPS) -> SubgroupLattice:
    """Every subgroup of G exactly once, sorted by (order, bitset)."""
    n = G.order
    conj = _conjugation_maps(G)
    cyclics = _cyclic_subgroups(G)
    found: dict[int, tuple[int, ...]] = {}
    class_of: dict[int, int] = {}
    classes: list[list[int]] = []
    queue: deque[tuple[int, tuple[int, ...]]] = deque()

    def add_class(mask: np.ndarray, witness: tuple[int, ...]) -> None:
        cid = len(classes)
        start = mask_to_int(mask)
        members = [start]
        found[start] = witness
        class_of[start] = cid
        todo = [(mask, witness)]
        while todo:
            m, w = todo.pop()
            for c in conj:
                m2 = np.zeros(n, dtype=bool)
                m2[c[m]] = True
                k2 = mask_to_int(m2)
                if k2 not in found:
                    w2 = tuple(int(c[x]) for x in w)
                    found[k2] = w2
                    class_of[k2] = cid
                    members.append(k2)
                    todo.append((m2, w2))
        if len(found) > max_subgroups:
            raise CapExceeded(f"more than {max_subgroups} subgroups")
        classes.append(members)
        queue.append((min(members), found[min(members)]))

    for key, mask, w in cyclics:
        if key not in found:
            add_class(mask, w)

    while queue:
        hkey, hw = queue.popleft()
        for ckey, _, cw in cyclics:
            if ckey & hkey == ckey:
                continue
            w = hw + cw
            mask = G.closure(w)
            key = mask_to_int(mask)
            if key not in found:
                add_class(mask, w)

    ordered = sorted(found, key=lambda k: (k.bit_count(), k))
    index = {k: i for i, k in enumerate(ordered)}
    nodes = [SubgroupNode(i, k, k.bit_count(), found[k], class_id=-1) for i, k in enumerate(ordered)]
    cls_lists = sorted((sorted(index[k] for k in members) for members in classes),
                       key=lambda c: c[0])
    for cid, members in enumerate(cls_lists):
        for i in members:
            nodes[i].class_id = cid
    L = SubgroupLattice(G, nodes, cls_lists)
    _mark_maximal(L)
    for nd in nodes:
        if n % nd.order:
            raise InternalCheckFailed(f"subgroup order {nd.order} does not divide {n}")
    return L


def _mark_maximal(L: SubgroupLattice) -> None:
    top = L.top.index
    for rep in L.representatives():
        if rep == top:
            continue
        supers = L.proper_supergroups(rep)
        maximal = supers == [top]
        members = L.classes[L.nodes[rep].class_id] if L.classes is not None else [rep]
        for i in members:
            L.nodes[i].is_maximal = maximal


def sublattice(L: SubgroupLattice, i: int) -> SubgroupLattice:
    """Lattice of the subgroup at node ``i``, as nodes of L contained in it.

    Conjugacy classes are not tracked (each node is its own class).
    """
    h = L.nodes[i].members
    sub = [nd for nd in L.nodes[: i + 1] if nd.members & h == nd.members]
    nodes = [SubgroupNode(j, nd.members, nd.order, nd.generator_witness, class_id=j)
             for j, nd in enumerate(sub)]
    SL = SubgroupLattice(L.group, nodes, None)
    _mark_maximal(SL)
    return SL


# -- Moebius function ---------------------------------------------------------

@dataclass
class MoebiusTable:
    values: list[int]

    def __getitem__(self, i: int) -> int:
        return self.values[i]


def moebius_table(L: SubgroupLattice) -> MoebiusTable:
    """mu(H) from sum_{K >= H} mu(K) = [H == G], evaluated from the top down."""
    nodes = L.nodes
    mu: list[int | None] = [None] * len(nodes)
    top = L.top.index
    reps = sorted(L.representatives(), key=lambda i: -nodes[i].order)
    for rep in reps:
        if rep == top:
            val = 1
        else:
            val = -sum(mu[k] for k in L.proper_supergroups(rep))
        members = L.classes[nodes[rep].class_id] if L.classes is not None else [rep]
        for i in members:
            mu[i] = val
    return MoebiusTable(mu)


def check_moebius_identity(L: SubgroupLattice, M: MoebiusTable, nodes: Sequence[int] | None = None) -> None:
    """Assert sum_{K >= H} mu(K) = [H == G] for the given nodes (default: all)."""
    top = L.top.index
    for i in (range(len(L)) if nodes is None else nodes):
        total = M[i] + sum(M[k] for k in L.proper_supergroups(i))
        if total != (1 if i == top else 0):
            raise InternalCheckFailed(f"Moebius identity fails at node {i}: {total}")


def phi2_via_moebius(L: SubgroupLattice, M: MoebiusTable) -> int:
    """Number of generating pairs, sum over H of mu(H) |H|^2."""
    total = sum(M[nd.index] * nd.order * nd.order for nd in L.nodes)
    if total < 0:
        raise NegativeResult(f"phi2 came out negative ({total})")
    return total


def phi2_of_subgroup(L: SubgroupLattice, i: int) -> int:
    """phi2 of the subgroup at node ``i``, by Moebius inversion in its own lattice."""
    if i == L.top.index:
        return phi2_via_moebius(L, moebius_table(L))
    SL = sublattice(L, i)
    return phi2_via_moebius(SL, moebius_table(SL))


@dataclass(frozen=True)
class MaximalClass:
    representative: SubgroupNode
    index: int
    class_size: int


def maximal_classes(L: SubgroupLattice) -> list[MaximalClass]:
    """Conjugacy classes of maximal subgroups, least bitset as representative."""
    if L.classes is None:
        raise ValueError("lattice does not carry conjugacy classes")
    n = L.group.order
    out = []
    for members in L.classes:
        rep = L.nodes[members[0]]
        if rep.is_maximal:
            rep = min((L.nodes[i] for i in members), key=lambda nd: nd.members)
            out.append(MaximalClass(rep, n // rep.order, len(members)))
    out.sort(key=lambda c: (c.index, c.representative.members))
    return out


def maximal_index_sum(L: SubgroupLattice) -> Fraction:
    return sum((Fraction(1, c.index) for c in maximal_classes(L)), Fraction(0))


def maximal_membership(L: SubgroupLattice) -> np.ndarray:
    """``(|G|, words)`` uint64 array; bit j of row g says g lies in the j-th maximal subgroup."""
    n = L.group.order
    maxes = L.maximal_nodes()
    words = max(1, (len(maxes) + 63) // 64)
    out = np.zeros((n, words), dtype=np.uint64)
    for j, nd in enumerate(maxes):
        ids = int_to_ids(nd.members, n)
        out[ids, j // 64] |= np.uint64(1) << np.uint64(j % 64)
    return out


# -- serialisation --------------------------------------------------------

def lattice_to_dict(L: SubgroupLattice, M: MoebiusTable | None = None) -> dict:
    return {
        "group": L.group.label,
        "order": L.group.order,
        "subgroups": [
            {"members": format(nd.members, "x"), "witness": list(nd.generator_witness),
             "maximal": nd.is_maximal, "class": nd.class_id,
             **({"mu": M[nd.index]} if M is not None else {})}
            for nd in L.nodes
        ],
        "classes": L.classes,
    }


def lattice_from_dict(G: GroupHandle, data: dict) -> tuple[SubgroupLattice, MoebiusTable | None]:
    if data["order"] != G.order:
        raise ValueError("cached lattice belongs to a group of different order")
    nodes = []
    for i, rec in enumerate(data["subgroups"]):
        bits = int(rec["members"], 16)
        nodes.append(SubgroupNode(i, bits, bits.bit_count(), tuple(rec["witness"]),
                                  bool(rec["maximal"]), int(rec["class"])))
    L = SubgroupLattice(G, nodes, [list(c) for c in data["classes"]] if data["classes"] is not None else None)
    mus = [rec.get("mu") for rec in data["subgroups"]]
    M = MoebiusTable(mus) if all(m is not None for m in mus) else None
    return L, M
