"""Deterministic Schreier-Sims.

Builds a base and strong generating set for a permutation group given by
generators, and reads off the exact group order as the product of the basic
orbit lengths.  Base points are chosen as the first point moved by the
element that forces a new level, so the chain depends only on the input
generators and their order.
"""

from __future__ import annotations

import time
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import TimeBudgetExceeded
from .perm import Permutation


class _Level:
    __slots__ = ("point", "gens", "orbit", "trans", "tinv", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.orbit: list[int] = [point]
        self.trans: dict[int, np.ndarray] = {}
        self.tinv: dict[int, np.ndarray] = {}
        # (orbit index, generator index) pairs whose Schreier generator sifts
        self.checked: set[tuple[int, int]] = set()


class StabilizerChain:
    """Base and strong generating set of ``<generators>``.

    ``time_budget`` (seconds) aborts the construction with
    TimeBudgetExceeded instead of running unbounded.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 time_budget: float | None = None):
        gens = [np.asarray(g, dtype=np.intp) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required when no generators are given")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators must all have the same degree")
        self.degree = degree
        self._deadline = None if time_budget is None else time.monotonic() + time_budget
        self._id = np.arange(degree, dtype=np.intp)
        self._levels: list[_Level] = []
        gens = [g for g in gens if not self._is_id(g)]
        for g in gens:
            if all(g[lev.point] == lev.point for lev in self._levels):
                self._new_level(g)
        for i, lev in enumerate(self._levels):
            fixed = [l.point for l in self._levels[:i]]
            for g in gens:
                if all(g[b] == b for b in fixed):
                    lev.gens.append(g)
            self._extend_orbit(lev)
        self._run(len(self._levels) - 1)

    # -- helpers ---------------------------------------------------------
    def _is_id(self, p: np.ndarray) -> bool:
        return not (p != self._id).any()

    def _new_level(self, g: np.ndarray) -> _Level:
        point = int(np.flatnonzero(g != self._id)[0])
        lev = _Level(point)
        lev.trans[point] = self._id
        lev.tinv[point] = self._id
        self._levels.append(lev)
        return lev

    def _extend_orbit(self, lev: _Level) -> None:
        k = 0
        while k < len(lev.orbit):
            beta = lev.orbit[k]
            u = lev.trans[beta]
            for s in lev.gens:
                img = int(s[beta])
                if img not in lev.trans:
                    v = s[u]
                    lev.trans[img] = v
                    inv = np.empty_like(v)
                    inv[v] = self._id
                    lev.tinv[img] = inv
                    lev.orbit.append(img)
            k += 1

    def _sift(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for l in range(start, len(self._levels)):
            lev = self._levels[l]
            b = int(h[lev.point])
            inv = lev.tinv.get(b)
            if inv is None:
                return h, l
            h = inv[h]
        return h, len(self._levels)

    def _run(self, i: int) -> None:
        while i >= 0:
            if self._deadline is not None and time.monotonic() > self._deadline:
                raise TimeBudgetExceeded("stabilizer chain construction ran out of time")
            j = self._process_level(i)
            i = i - 1 if j is None else j

    def _process_level(self, i: int) -> int | None:
        lev = self._levels[i]
        k = 0
        while k < len(lev.orbit):
            beta = lev.orbit[k]
            u = lev.trans[beta]
            for si, s in enumerate(lev.gens):
                if (k, si) in lev.checked:
                    continue
                lev.checked.add((k, si))
                us = s[u]
                h = lev.tinv[int(s[beta])][us]
                if self._is_id(h):
                    continue
                h, j = self._sift(h, i + 1)
                if j == len(self._levels):
                    if self._is_id(h):
                        continue
                    self._new_level(h)
                for l in range(i + 1, j + 1):
                    self._levels[l].gens.append(h)
                    self._extend_orbit(self._levels[l])
                return j
            k += 1
        return None

    # -- public ----------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self._levels]

    @property
    def orbit_lengths(self) -> list[int]:
        return [len(lev.orbit) for lev in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for lev in self._levels:
            for g in lev.gens:
                seen.setdefault(g.tobytes(), tuple(int(v) for v in g))
        return list(seen.values())

    def order(self) -> int:
        return prod(len(lev.orbit) for lev in self._levels)

    def contains(self, p: Sequence[int]) -> bool:
        h = np.asarray(p, dtype=np.intp)
        if len(h) != self.degree:
            return False
        h, j = self._sift(h)
        return j == len(self._levels) and self._is_id(h)

    def __contains__(self, p) -> bool:
        return self.contains(p)


def bsgs_order(gens: Sequence[Sequence[int]]) -> int:
    """Exact order of the permutation group generated by ``gens``."""
    if not gens:
        raise ValueError("need at least one generator")
    return StabilizerChain(gens).order()
