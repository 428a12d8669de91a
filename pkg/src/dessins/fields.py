"""Small finite fields GF(p^e) as lookup tables.

Elements are integers ``0..q-1``; the integer ``sum(c_i * p**i)`` stands for
the polynomial ``sum(c_i * t**i)`` reduced modulo the lexicographically least
monic irreducible polynomial of degree ``e`` over GF(p).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np
from sympy import factorint

from .errors import ValidationError


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q == p**e`` and ``p`` prime, or None."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return int(p), int(e)


def _polymulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    e = len(modulus) - 1
    out = [0] * (2 * e - 1 if e else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # reduce with the monic modulus (coefficients low to high)
    for k in range(len(out) - 1, e - 1, -1):
        c = out[k]
        if c:
            for i in range(e + 1):
                out[k - e + i] = (out[k - e + i] - c * modulus[i]) % p
    return out[:e]


def _is_irreducible(poly: list[int], p: int) -> bool:
    """True when ``poly`` (monic, low-to-high) is irreducible over GF(p)."""
    e = len(poly) - 1
    if e == 1:
        return True
    # brute force: no monic factor of degree 1..e//2
    for d in range(1, e // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            divisor = list(coeffs) + [1]
            rem = list(poly)
            for k in range(e, d - 1, -1):
                c = rem[k]
                if c:
                    for i in range(d + 1):
                        rem[k - d + i] = (rem[k - d + i] - c * divisor[i]) % p
            if not any(rem[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree ``e`` over GF(p).

    Coefficients are returned low to high; the ordering compares the
    coefficient vectors from the highest non-leading term down.
    """
    for coeffs in product(range(p), repeat=e):
        poly = list(reversed(coeffs)) + [1]
        if e > 1 and poly[0] == 0:
            continue
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise ValidationError(f"no irreducible polynomial of degree {e} over GF({p})")


class GF:
    """The field with ``q = p**e`` elements.

    For prime ``q`` multiplication is plain arithmetic mod ``p`` unless
    ``generic`` is set, in which case the polynomial path is used (the two
    must agree).
    """

    def __init__(self, q: int, generic: bool = False):
        pe = prime_power(q)
        if pe is None:
            raise ValidationError(f"{q} is not a prime power")
        self.q = q
        self.p, self.e = pe
        p, e = self.p, self.e
        digits = [[(x // p**i) % p for i in range(e)] for x in range(q)]
        add = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = sum(((digits[a][i] + digits[b][i]) % p) * p**i for i in range(e))
        if e == 1 and not generic:
            mul = np.fromfunction(lambda a, b: (a * b) % p, (q, q), dtype=np.int64)
            self.modulus = (0, 1)
        else:
            self.modulus = least_irreducible(p, e)
            mul = np.empty((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(q):
                    prod_ = _polymulmod(digits[a], digits[b], list(self.modulus), p)
                    mul[a, b] = sum(c * p**i for i, c in enumerate(prod_))
        self.add = add
        self.mul = mul
        self.neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.primitive = self._find_primitive()

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        for g in range(2, self.q):
            x, k = g, 1
            while x != 1:
                x = int(self.mul[x, g])
                k += 1
            if k == self.q - 1:
                return g
        raise AssertionError("no primitive element")

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def basis(self) -> list[int]:
        """The additive basis ``1, t, ..., t^(e-1)`` as field elements."""
        return [self.p ** i for i in range(self.e)]

    def __repr__(self):
        return f"GF({self.q})"
