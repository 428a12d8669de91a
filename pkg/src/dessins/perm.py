"""Permutations in one-line notation.

A permutation of degree ``d`` is a tuple ``p`` with ``p[i]`` the image of
point ``i``.  Products are read left to right: ``compose(p, q)`` applies
``p`` first, then ``q``, so ``compose(p, q)[i] == q[p[i]]``.  With this
convention the commutator ``[x, y]`` is ``x^-1 y^-1 x y``.
"""

from __future__ import annotations

from functools import reduce
from math import lcm
from typing import Iterable, Sequence

from .errors import ValidationError

Permutation = tuple


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def check_permutation(p: Sequence[int]) -> Permutation:
    """Return ``p`` as a tuple, raising ValidationError if it is not a bijection."""
    p = tuple(int(i) for i in p)
    if not is_permutation(p):
        raise ValidationError(f"not a permutation: {p!r}")
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    return tuple(q[i] for i in p)


def multiply(*perms: Permutation) -> Permutation:
    return reduce(compose, perms)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        p, k = inverse(p), -k
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``p`` including fixed points, each starting at its least point."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = p[start]
        while j != start:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def element_order(p: Permutation) -> int:
    """Least ``k >= 1`` with ``p**k`` the identity (lcm of the cycle lengths)."""
    return lcm(*(len(c) for c in cycles(p))) if p else 1


def commutator(x: Permutation, y: Permutation) -> Permutation:
    """``[x, y] = x^-1 y^-1 x y``."""
    if len(x) != len(y):
        raise ValueError("degree mismatch")
    return multiply(inverse(x), inverse(y), x, y)


def from_cycles(degree: int, *cycs: Iterable[int]) -> Permutation:
    """Build a permutation from cycles, e.g. ``from_cycles(5, (0, 1, 2))``."""
    img = list(range(degree))
    for cyc in cycs:
        cyc = list(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return check_permutation(img)


def is_identity(p: Permutation) -> bool:
    return all(i == j for i, j in enumerate(p))


def first_moved_point(p: Permutation) -> int | None:
    for i, j in enumerate(p):
        if i != j:
            return i
    return None


def format_cycles(p: Permutation) -> str:
    parts = ["(" + " ".join(map(str, c)) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"
