"""Truncated Laurent series over F_q and small matrices of them.

A :class:`TruncSeries` is known modulo t^prec (absolute precision).  Series
built from Laurent polynomials are exact (``prec is None``); precision is
lost only through division by a non-monomial unit, and every operation
propagates the precision that is actually justified.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from ..errors import EnvelopeExceeded, PrecisionExhausted
from .field import GF


def _min_prec(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _plus(a: Optional[int], k: int) -> Optional[int]:
    return None if a is None else a + k


class TruncSeries:
    __slots__ = ("F", "coeffs", "prec")

    def __init__(self, F: GF, coeffs: Mapping[int, int] | None = None, prec: Optional[int] = None):
        self.F = F
        self.prec = prec
        clean = {}
        for e, c in (coeffs or {}).items():
            if not 0 <= c < F.q:
                raise ValueError(f"{c} is not an element of {F!r}")
            if c and (prec is None or e < prec):
                clean[e] = c
        self.coeffs: Dict[int, int] = dict(sorted(clean.items()))

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, F: GF) -> "TruncSeries":
        return cls(F)

    @classmethod
    def monomial(cls, F: GF, e: int, c: int = 1) -> "TruncSeries":
        return cls(F, {e: c})

    @classmethod
    def from_terms(cls, F: GF, terms: Iterable[tuple]) -> "TruncSeries":
        acc: Dict[int, int] = {}
        for e, c in terms:
            acc[e] = F.add(acc.get(e, 0), c)
        return cls(F, acc)

    # -- inspection --------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_exact_zero(self) -> bool:
        return self.exact and not self.coeffs

    def known_zero(self) -> bool:
        """No nonzero coefficient below the precision (value may still be nonzero)."""
        return not self.coeffs

    def valuation_lower_bound(self) -> Optional[int]:
        if self.coeffs:
            return next(iter(self.coeffs))
        return self.prec

    def valuation(self) -> int:
        if self.coeffs:
            return next(iter(self.coeffs))
        if self.exact:
            raise ValueError("valuation of exact zero")
        raise PrecisionExhausted(f"series is zero modulo t^{self.prec}")

    def leading(self) -> int:
        return self.coeffs[self.valuation()]

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        F = self.F
        acc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] = F.add(acc.get(e, 0), c)
        return TruncSeries(F, acc, _min_prec(self.prec, other.prec))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.F, {e: self.F.neg(c) for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        F = self.F
        va, vb = self.valuation_lower_bound(), other.valuation_lower_bound()
        if self.is_exact_zero() or other.is_exact_zero():
            return TruncSeries(F)
        prec = _min_prec(_plus(self.prec, vb), _plus(other.prec, va))
        acc: Dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                acc[e] = F.add(acc.get(e, 0), F.mul(c1, c2))
        return TruncSeries(F, acc, prec)

    def scale(self, c: int) -> "TruncSeries":
        return TruncSeries(self.F, {e: self.F.mul(c, x) for e, x in self.coeffs.items()}, self.prec)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k."""
        return TruncSeries(self.F, {e + k: c for e, c in self.coeffs.items()}, _plus(self.prec, k))

    def inverse(self, precision: int) -> "TruncSeries":
        """1/self, with at most ``precision`` correct terms past the leading one."""
        F = self.F
        v = self.valuation()
        rel = precision if self.exact else min(precision, self.prec - v)
        unit = [self.coeffs.get(v + i, 0) for i in range(rel)]
        if self.exact and len(self.coeffs) == 1:
            return TruncSeries(F, {-v: F.inv(unit[0])})
        inv0 = F.inv(unit[0])
        out = [inv0]
        for i in range(1, rel):
            s = 0
            for j in range(1, i + 1):
                if unit[j]:
                    s = F.add(s, F.mul(unit[j], out[i - j]))
            out.append(F.neg(F.mul(inv0, s)))
        return TruncSeries(F, {i - v: c for i, c in enumerate(out)}, rel - v)

    def truncate(self, prec: int) -> "TruncSeries":
        return TruncSeries(self.F, self.coeffs, _min_prec(self.prec, prec))

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and (self.coeffs, self.prec) == (other.coeffs, other.prec)

    def __repr__(self):
        body = " + ".join(f"{c}*t^{e}" for e, c in self.coeffs.items()) or "0"
        return body if self.exact else f"{body} + O(t^{self.prec})"


class OracleMatrix:
    """Square matrix over F_q((t)); ``precision`` is the relative precision
    used whenever a pivot has to be inverted."""

    MAX_N = 3

    def __init__(self, rows: Sequence[Sequence[TruncSeries]], precision: int = 16):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if n > self.MAX_N:
            raise EnvelopeExceeded(f"n = {n} exceeds the supported size {self.MAX_N}")
        self.rows: List[List[TruncSeries]] = [list(r) for r in rows]
        self.n = n
        self.precision = precision

    @property
    def F(self) -> GF:
        return self.rows[0][0].F

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "OracleMatrix") -> "OracleMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = TruncSeries(self.F)
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return OracleMatrix(out, min(self.precision, other.precision))

    def with_precision(self, precision: int) -> "OracleMatrix":
        return OracleMatrix(self.rows, precision)

    @classmethod
    def diagonal_power(cls, F: GF, exps: Sequence[int], precision: int = 16) -> "OracleMatrix":
        n = len(exps)
        return cls(
            [[TruncSeries.monomial(F, exps[i]) if i == j else TruncSeries(F) for j in range(n)] for i in range(n)],
            precision,
        )

    @classmethod
    def from_terms(cls, F: GF, entries: Sequence[Sequence[Mapping[int, int]]], precision: int = 16) -> "OracleMatrix":
        """Entries given as {exponent: coefficient} Laurent polynomials."""
        return cls([[TruncSeries(F, e) for e in row] for row in entries], precision)

    def __repr__(self):
        return "OracleMatrix(" + "; ".join(", ".join(map(repr, r)) for r in self.rows) + ")"
