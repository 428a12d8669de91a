"""Nielsen moves on regular dessins and their orbits (T2-systems).

Outer automorphisms of the free group F = <X, Y> act on Aut(G)-classes of
generating pairs.  The action is computed by applying an elementary Nielsen
move to a class representative and looking up the class of the result, which
is well defined because different lifts of the same outer automorphism differ
by conjugation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

from .bsgs import StabilizerChain
from .census import CensusReport, DessinClass
from .errors import CapExceeded, InternalCheckFailed, NotApplicable
from .zoo import Family


class NielsenMove(str, Enum):
    E1 = "E1"        # (x, y) -> (y, x)
    E2 = "E2"        # (x, y) -> (x^-1, y)
    E3 = "E3"        # (x, y) -> (x, y^-1)
    E4 = "E4"        # (x, y) -> (xy, y)
    E5 = "E5"        # (x, y) -> (x, yx)
    E4inv = "E4inv"  # (x, y) -> (xy^-1, y)
    E5inv = "E5inv"  # (x, y) -> (x, yx^-1)


ALL_MOVES = tuple(NielsenMove)
MINIMAL_MOVES = (NielsenMove.E1, NielsenMove.E4, NielsenMove.E4inv)

# words are applied left to right
T_WORD = ("E1", "E2", "E4inv")             # (x, y) -> (z, x)
S_WORD = ("E5", "E4inv")                   # S = E4^-1 E5, S^2 = T, S^3 = -I
U_WORD = ("E1", "E2")                      # (x, y) -> (y^-1, x)
MINUS_I_WORD = ("E1", "E2", "E1", "E2")    # (x, y) -> (x^-1, y^-1)


def move_pair(census: CensusReport, move: NielsenMove | str, x: int, y: int,
              e5_lift: str = "right") -> tuple[int, int]:
    """Image of the pair of element ids under a Nielsen move.

    ``e5_lift="left"`` uses Y -> XY for E5 (and its inverse) instead of Y -> YX.
    """
    G = census.group
    mul, inv = G.mul, G.inv
    move = NielsenMove(move)
    if move is NielsenMove.E1:
        return y, x
    if move is NielsenMove.E2:
        return int(inv[x]), y
    if move is NielsenMove.E3:
        return x, int(inv[y])
    if move is NielsenMove.E4:
        return int(mul[x, y]), y
    if move is NielsenMove.E4inv:
        return int(mul[x, inv[y]]), y
    left = e5_lift == "left"
    if move is NielsenMove.E5:
        return x, int(mul[x, y] if left else mul[y, x])
    return x, int(mul[inv[x], y] if left else mul[y, inv[x]])


def apply_nielsen(move: NielsenMove | str, cls: DessinClass | int, census: CensusReport,
                  e5_lift: str = "right") -> int:
    """Class id reached from ``cls`` by one move."""
    cid = cls if isinstance(cls, int) else cls.class_id
    x, y = census.classes[cid].rep
    return census.class_of_pair(*move_pair(census, move, x, y, e5_lift))


def apply_word(word: Sequence[str], cls: DessinClass | int, census: CensusReport) -> int:
    cid = cls if isinstance(cls, int) else cls.class_id
    x, y = census.classes[cid].rep
    for move in word:
        x, y = move_pair(census, move, x, y)
    return census.class_of_pair(x, y)


def move_permutation(census: CensusReport, move: NielsenMove | str, e5_lift: str = "right") -> np.ndarray:
    """The permutation of class ids induced by a move (bijectivity asserted)."""
    perm = np.array([apply_nielsen(move, c, census, e5_lift) for c in range(census.r)], dtype=np.intp)
    if len(np.unique(perm)) != census.r:
        raise InternalCheckFailed(f"move {move} does not permute the classes")
    return perm


@dataclass
class TOrbit:
    orbit_id: int
    length: int
    members: list[int]
    commutator_order: int
    higman_label: tuple[int, int]

    def to_dict(self) -> dict:
        return {"orbit_id": self.orbit_id, "length": self.length, "members": self.members,
                "commutator_order": self.commutator_order, "higman_label": list(self.higman_label)}


@dataclass
class TSystemReport:
    nu: int
    orbits: list[TOrbit]
    orbit_of: list[int]
    omega_action_order: int | None = None

    @property
    def lengths(self) -> list[int]:
        return [o.length for o in self.orbits]

    def partition(self) -> list[tuple[int, ...]]:
        return [tuple(o.members) for o in self.orbits]

    def to_dict(self) -> dict:
        out = {"nu": self.nu, "orbits": [o.to_dict() for o in self.orbits]}
        if self.omega_action_order is not None:
            out["omega_action_order"] = str(self.omega_action_order)
        return out


def omega_orbits(census: CensusReport, moves: Iterable[NielsenMove | str] = ALL_MOVES) -> TSystemReport:
    """Partition the census into orbits of the moves.

    The commutator order and Higman label are checked to be constant on
    every orbit.
    """
    perms = [move_permutation(census, m) for m in moves]
    r = census.r
    orbit_of = [-1] * r
    orbits = []
    for start in range(r):
        if orbit_of[start] >= 0:
            continue
        oid = len(orbits)
        orbit_of[start] = oid
        members = [start]
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for p in perms:
                d = int(p[c])
                if orbit_of[d] < 0:
                    orbit_of[d] = oid
                    members.append(d)
                    queue.append(d)
        members.sort()
        first = census.classes[members[0]]
        for c in members:
            cls = census.classes[c]
            if cls.commutator_order != first.commutator_order or cls.higman_label != first.higman_label:
                raise InternalCheckFailed(f"commutator invariant not constant on orbit {oid}")
        orbits.append(TOrbit(oid, len(members), members, first.commutator_order, first.higman_label))
    if sum(o.length for o in orbits) != r:
        raise InternalCheckFailed("orbit lengths do not add up to r")
    return TSystemReport(len(orbits), orbits, orbit_of)


def omega_action_order(census: CensusReport, report: TSystemReport | None = None,
                       max_classes: int = 64) -> int:
    """Order of the permutation group induced on class ids by all seven moves."""
    if census.r > max_classes:
        raise CapExceeded(f"r = {census.r} exceeds {max_classes}")
    gens = [move_permutation(census, m) for m in ALL_MOVES]
    order = StabilizerChain(gens, census.r).order()
    if report is not None:
        report.omega_action_order = order
    return order


def higman_lower_bound_check(census: CensusReport, report: TSystemReport | None = None) -> int:
    """Number of distinct Higman labels for G = L2(p); a lower bound for nu.

    Asserts labels >= ceil((p - 1) / 4) and nu >= labels.
    """
    desc = census.group.descriptor
    if desc is None or desc.family is not Family.PSL2 or desc.params[0] < 5 or \
            not isprime(desc.params[0]):
        raise NotApplicable("Higman bound applies to L2(p), p >= 5 prime")
    p = desc.params[0]
    labels = len({c.higman_label for c in census.classes})
    bound = -(-(p - 1) // 4)
    if labels < bound:
        raise InternalCheckFailed(f"{labels} Higman labels, expected at least {bound}")
    report = report or omega_orbits(census)
    if report.nu < labels:
        raise InternalCheckFailed(f"nu = {report.nu} below Higman bound {labels}")
    return labels
