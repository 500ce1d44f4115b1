"""Integer Laurent polynomials in a formal ``q`` and the coefficient modes.

A :class:`QMode` decides what a coefficient is: a :class:`LaurentPoly` when
``q`` is symbolic, or an exact number when ``q`` is a given prime power.
Every algebra routine is written once against the mode, so the numeric
results are literally the symbolic ones specialised.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import ModeMismatch, NotPrimePower


_TERM = re.compile(r"([+-])?(\d+)?(\*)?(q(?:\^(-?\d+))?)?")


class LaurentPoly:
    """Element of Z[q, q^-1], stored as a sorted tuple of (exponent, coeff)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], int] = ()):
        if isinstance(terms, int):
            terms = {0: terms}
        acc: Dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: accepts e.g. ``1+2*q^3-q^-1``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        terms: Dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(4) is None):
                raise ValueError(f"cannot parse coefficient {text!r}")
            if pos and m.group(1) is None:
                raise ValueError(f"cannot parse coefficient {text!r}")
            coeff = int(m.group(2)) if m.group(2) else 1
            exp = (int(m.group(5)) if m.group(5) else 1) if m.group(4) else 0
            if m.group(1) == "-":
                coeff = -coeff
            terms[exp] = terms.get(exp, 0) + coeff
            pos = m.end()
        return cls(terms)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> Tuple[Tuple[int, int], ...]:
        return self._terms

    def coeff(self, exponent: int) -> int:
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int:
        return self._terms[0][0] if self._terms else 0

    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return self._terms[-1][0] if self._terms else -1

    def is_polynomial(self) -> bool:
        return not self._terms or self._terms[0][0] >= 0

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for _, c in self._terms)

    def constant_term(self) -> int:
        return self.coeff(0)

    def evaluate(self, q):
        """Substitute a number for q; returns int when exact, else Fraction."""
        total = Fraction(0)
        for e, c in self._terms:
            total += c * (Fraction(q) ** e)
        return int(total) if total.denominator == 1 else total

    def substitute_inverse(self) -> "LaurentPoly":
        """q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self._terms})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms})

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _lift(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only units of Z[q^±] can be inverted")
            (e, c), = self._terms
            return LaurentPoly({-e * -n: c ** -n})
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self._terms:
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qq = "q" if e == 1 else f"q^{e}"
                body = qq if mag == 1 else f"{mag}*{qq}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+" if c > 0 else "-") + body)
        return "".join(out)


# Kostka-Foulkes outputs: Laurent polynomials with no negative powers.
QPolynomial = LaurentPoly

Q = LaurentPoly.monomial(1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power_base(q: int) -> int:
    """Return p with q = p^k, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    n = q
    while n % p == 0:
        n //= p
    if n != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p


class QMode:
    """Coefficient ring selector: symbolic q, or q fixed to a prime power."""

    __slots__ = ("q",)

    def __init__(self, q: int | None = None):
        if q is not None:
            prime_power_base(q)
        self.q = q

    @property
    def symbolic(self) -> bool:
        return self.q is None

    def qpow(self, k: int):
        if self.q is None:
            return LaurentPoly.monomial(k)
        return self.q ** k if k >= 0 else Fraction(1, self.q ** -k)

    @property
    def zero(self):
        return LaurentPoly() if self.q is None else 0

    @property
    def one(self):
        return LaurentPoly(1) if self.q is None else 1

    def coerce(self, c):
        """Bring an int/LaurentPoly/Fraction into this mode."""
        if self.q is None:
            if isinstance(c, LaurentPoly):
                return c
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ModeMismatch("rational constant in symbolic mode")
                c = int(c)
            return LaurentPoly(int(c))
        if isinstance(c, LaurentPoly):
            c = c.evaluate(self.q)
        if isinstance(c, Fraction) and c.denominator == 1:
            c = int(c)
        return c

    @staticmethod
    def is_zero(c) -> bool:
        return not c

    def format(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, QMode) and other.q == self.q

    def __hash__(self):
        return hash(("QMode", self.q))

    def __repr__(self):
        return "QMode(symbolic)" if self.q is None else f"QMode(q={self.q})"


SYMBOLIC = QMode()
