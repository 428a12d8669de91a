"""Finite permutation groups with a lazily built element table.

Elements are numbered by their rank in the lexicographic order of one-line
notation, so element ids (and everything derived from them downstream) do
not depend on how the group was generated.  The identity always has id 0.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np

from .bsgs import StabilizerChain
from .errors import CapExceeded
from .perm import Permutation, check_permutation, compose, element_order

ENUMERATION_CAP = 20_000
# N x N int32 products; 5000 elements is ~100 MB
TABLE_CAP = 5_000


def enumerate_elements(gens: Sequence[Sequence[int]], cap: int = ENUMERATION_CAP) -> list[Permutation]:
    """All elements of ``<gens>``, sorted lexicographically.

    Raises CapExceeded as soon as the closure grows past ``cap``.
    """
    if not gens:
        raise ValueError("need at least one generator")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = [check_permutation(g) for g in gens]
    d = len(gens[0])
    if any(len(g) != d for g in gens):
        raise ValueError("generators must all have the same degree")
    e = tuple(range(d))
    seen = {e}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(g, s)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise CapExceeded(f"group has more than {cap} elements")
                queue.append(h)
    return sorted(seen)


class GroupHandle:
    """A finite permutation group given by generators.

    ``elements``, ``mul``, ``inv`` and ``orders`` are computed on first
    access and then shared read-only.  ``mul[a, b]`` is the id of the
    product ``a * b`` (``a`` applied first).
    """

    def __init__(self, generators: Sequence[Sequence[int]], label: str = "", descriptor=None,
                 cap: int = ENUMERATION_CAP):
        if not generators:
            raise ValueError("need at least one generator")
        gens = tuple(check_permutation(g) for g in generators)
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise ValueError("generators must all have the same degree")
        self.degree = d
        self.generators = gens
        self.label = label
        self.descriptor = descriptor
        self.cap = cap

    def __repr__(self):
        return f"GroupHandle({self.label or '?'}, degree={self.degree})"

    @cached_property
    def chain(self) -> StabilizerChain:
        return StabilizerChain(self.generators, self.degree)

    @cached_property
    def order(self) -> int:
        return self.chain.order()

    @property
    def has_element_table(self) -> bool:
        return self.order <= self.cap

    @cached_property
    def element_list(self) -> list[Permutation]:
        if self.order > self.cap:
            raise CapExceeded(f"|G| = {self.order} exceeds enumeration cap {self.cap}")
        return enumerate_elements(self.generators, self.cap)

    @cached_property
    def elements(self) -> np.ndarray:
        """``(order, degree)`` array, row ``i`` is element ``i`` in one-line notation."""
        arr = np.array(self.element_list, dtype=np.intp).reshape(len(self.element_list), self.degree)
        arr.setflags(write=False)
        return arr

    @cached_property
    def _lookup(self):
        # A set of points whose images already separate all elements.
        E = self.elements
        n = len(E)
        base: list[int] = []
        keys = np.zeros(n, dtype=np.int64)
        while len(np.unique(keys)) < n:
            cols = np.arange(self.degree)
            # pick the point splitting the current key classes the most
            best, best_count = None, -1
            for c in cols:
                if c in base:
                    continue
                count = len(np.unique(keys * self.degree + E[:, c]))
                if count > best_count:
                    best, best_count = c, count
            base.append(int(best))
            keys = keys * self.degree + E[:, best]
            if len(base) > 12:
                raise CapExceeded("separating point set too large for int64 keys")
        order = np.argsort(keys)
        return np.array(base, dtype=np.intp), keys[order], order

    def index_array(self, images: np.ndarray) -> np.ndarray:
        """Ids of the elements whose images of the separating points are ``images``."""
        base, sorted_keys, order = self._lookup
        keys = np.zeros(images.shape[:-1], dtype=np.int64)
        for k in range(images.shape[-1]):
            keys = keys * self.degree + images[..., k]
        pos = np.searchsorted(sorted_keys, keys)
        return order[pos]

    def index(self, p: Sequence[int]) -> int:
        """Element id of the permutation ``p``."""
        p = tuple(p)
        base, _, _ = self._lookup
        i = int(self.index_array(np.asarray([p[b] for b in base])[None, :])[0])
        if tuple(self.element_list[i]) != p:
            raise KeyError("permutation is not an element of the group")
        return i

    def element(self, i: int) -> Permutation:
        return self.element_list[i]

    @cached_property
    def mul(self) -> np.ndarray:
        n = self.order
        if n > TABLE_CAP:
            raise CapExceeded(f"|G| = {n} exceeds multiplication-table cap {TABLE_CAP}")
        E = self.elements
        base, _, _ = self._lookup
        table = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            # (a*b)[pt] = b[a[pt]] for all b at once
            table[a] = self.index_array(E[:, E[a, base]])
        table.setflags(write=False)
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        inv = np.argmin(self.mul, axis=1).astype(np.int32)
        inv.setflags(write=False)
        return inv

    @cached_property
    def orders(self) -> np.ndarray:
        arr = np.array([element_order(p) for p in self.element_list], dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def exponent(self) -> int:
        return lcm(*(int(o) for o in np.unique(self.orders)))

    @cached_property
    def generator_ids(self) -> tuple[int, ...]:
        return tuple(self.index(g) for g in self.generators)

    @cached_property
    def center(self) -> np.ndarray:
        """Sorted ids of the central elements."""
        mul = self.mul
        mask = np.ones(self.order, dtype=bool)
        for g in self.generator_ids:
            mask &= mul[:, g] == mul[g, :]
        return np.flatnonzero(mask)

    @cached_property
    def is_abelian(self) -> bool:
        return len(self.center) == self.order

    def closure(self, ids: Sequence[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by element ids."""
        mul = self.mul
        gens = np.unique(np.asarray(list(ids), dtype=np.intp))
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.intp)
        gens = gens[gens != 0]
        while len(frontier) and len(gens):
            new = np.unique(mul[np.ix_(frontier, gens)].ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask

    def generates(self, ids: Sequence[int]) -> bool:
        return bool(self.closure(ids).all())

    @cached_property
    def derived_subgroup_mask(self) -> np.ndarray:
        mul, inv = self.mul, self.inv
        n = self.order
        comms = set()
        for x in range(n):
            # x^-1 y^-1 x y for all y
            c = mul[mul[mul[inv[x], inv], x], np.arange(n)]
            comms.update(np.unique(c).tolist())
        return self.closure(sorted(comms))

    @property
    def is_perfect(self) -> bool:
        return bool(self.derived_subgroup_mask.all())

    def conjugacy_classes(self) -> np.ndarray:
        """Array mapping element id to the id of the least element in its class."""
        mul, inv = self.mul, self.inv
        n = self.order
        cls = np.arange(n)
        changed = True
        while changed:
            changed = False
            for g in self.generator_ids:
                conj = mul[mul[inv[g], np.arange(n)], g]
                merged = np.minimum(cls, cls[conj])
                # propagate the minimum across each orbit of the generator
                if (merged != cls).any():
                    cls = merged
                    changed = True
            cls = cls[cls]
        return cls
