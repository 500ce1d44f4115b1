from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satake.errors import ModeMismatch, NotPrimePower
from satake.qpoly import Q, LaurentPoly, QMode, is_prime, prime_power_base

terms = st.dictionaries(st.integers(-4, 6), st.integers(-5, 5), max_size=5)
polys = terms.map(LaurentPoly)


def test_canonical_strings():
    assert str(1 + 2 * Q ** 3) == "1+2*q^3"
    assert str(Q ** -2 * -1 + Q + 5 * Q ** 2) == "-q^-2+q+5*q^2"
    assert str(LaurentPoly()) == "0"


@pytest.mark.parametrize("text", ["0", "1", "-q", "q^-1", "2*q^3-q^-2+7", "-1+q"])
def test_parse_roundtrip(text):
    p = LaurentPoly.parse(text)
    assert LaurentPoly.parse(str(p)) == p


def test_degree_and_polynomial_flags():
    p = Q ** 2 - 3
    assert p.degree() == 2 and p.min_exponent() == 0
    assert p.is_polynomial()
    assert not (Q ** -1).is_polynomial()
    assert LaurentPoly().degree() == -1
    assert not p.has_nonnegative_coefficients()


def test_substitute_inverse_and_shift():
    p = Q + Q ** 2
    assert p.substitute_inverse() == Q ** -1 + Q ** -2
    assert p.substitute_inverse().shift(3) == Q ** 2 + Q


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a - a == LaurentPoly()


@given(polys, polys, st.sampled_from([2, 3, 5, Fraction(1, 2)]))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


def test_prime_power_helpers():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power_base(8) == 2 and prime_power_base(9) == 3
    with pytest.raises(NotPrimePower):
        prime_power_base(6)


def test_qmode():
    assert QMode().symbolic
    m = QMode(4)
    assert m.qpow(3) == 64 and m.qpow(-1) == Fraction(1, 4)
    assert m.coerce(1 + Q) == 5
    with pytest.raises(NotPrimePower):
        QMode(12)
    with pytest.raises(ModeMismatch):
        QMode().coerce(Fraction(1, 2))
