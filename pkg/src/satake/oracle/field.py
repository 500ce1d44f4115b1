"""Finite fields F_q, q a prime power, as addition/multiplication tables.

Elements are the integers 0..q-1; the integer with base-p digits
(c_0, c_1, ...) stands for c_0 + c_1 x + ... in F_p[x]/(f) for a fixed
monic irreducible f found by search.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import List, Tuple

from ..qpoly import prime_power_base


def _digits(n: int, p: int, k: int) -> List[int]:
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _from_digits(ds, p: int) -> int:
    return sum(d * p ** i for i, d in enumerate(ds))


def _polymulmod(a, b, f, p):
    k = len(f) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * f[i]) % p
    return prod[:k]


def _irreducible(p: int, k: int) -> Tuple[int, ...]:
    """First monic irreducible polynomial of degree k over F_p, in lex order."""
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        f = tuple(low) + (1,)
        if f[0] == 0:
            continue
        if _is_irreducible(f, p):
            return f
    raise ArithmeticError(f"no irreducible polynomial of degree {k} over F_{p}")


def _is_irreducible(f, p) -> bool:
    k = len(f) - 1
    # trial division by every monic polynomial of degree 1..k/2
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = list(f)
            for shift in range(k - d, -1, -1):
                c = r[shift + d]
                if c:
                    for i in range(d + 1):
                        r[shift + i] = (r[shift + i] - c * g[i]) % p
            if not any(r):
                return False
    return True


class GF:
    __slots__ = ("q", "p", "k", "modulus", "_add", "_mul", "_neg", "_inv")

    def __init__(self, q: int):
        p = prime_power_base(q)
        k = 0
        n = q
        while n > 1:
            n //= p
            k += 1
        self.q, self.p, self.k = q, p, k
        self.modulus = _irreducible(p, k)
        digits = [_digits(a, p, k) for a in range(q)]
        self._add = [[_from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])], p) for b in range(q)] for a in range(q)]
        self._neg = [_from_digits([(-x) % p for x in digits[a]], p) for a in range(q)]
        self._mul = [[_from_digits(_polymulmod(digits[a], digits[b], self.modulus, p), p) for b in range(q)] for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self._inv[a]

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
