from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satake.charalg import LatticeAlgebraElement, from_m_coordinates
from satake.errors import EnvelopeExceeded, NotPrimePower, PrecisionExhausted, Singular
from satake.hecke import double_coset_basis, hecke_algebra
from satake.oracle import (
    GF,
    OracleMatrix,
    TruncSeries,
    convolution_table,
    convolve_count,
    dominates_gl,
    field,
    hermite_cosets,
    random_unimodular,
    satake_count,
    satake_vector,
    smith_by_minors,
    smith_valuations,
    smith_with_retry,
    unipotent_box,
)
from satake.qpoly import QMode
from satake.rootdata import get_datum


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms(q):
    F = GF(q)
    els = list(F.elements())
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b, c in itertools.product(els[:4], repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    # the multiplicative group is cyclic of order q - 1 and has no zero divisors
    assert all(F.mul(a, b) for a in F.units() for b in F.units())


def test_field_rejects_non_prime_power():
    with pytest.raises(NotPrimePower):
        GF(6)


def test_series_inverse_and_precision():
    F = field(3)
    u = TruncSeries(F, {0: 1, 1: 1})  # 1 + t
    inv = u.inverse(8)
    assert inv.prec == 8
    assert (u * inv).coeffs == {0: 1}
    assert (u * inv).prec == 8
    mono = TruncSeries(F, {2: 2}).inverse(5)
    assert mono.exact and mono.coeffs == {-2: 2}


def test_series_valuation_unknown():
    F = field(2)
    x = TruncSeries(F, {}, prec=4)
    assert x.valuation_lower_bound() == 4
    with pytest.raises(PrecisionExhausted):
        x.valuation()


def mat(F, rows):
    return OracleMatrix.from_terms(F, rows)


def test_smith_examples():
    F = field(2)
    assert smith_valuations(OracleMatrix.diagonal_power(F, (0, 0))) == (0, 0)
    assert smith_valuations(mat(F, [[{1: 1}, {}], [{}, {0: 1}]])) == (1, 0)
    assert smith_valuations(mat(F, [[{1: 1}, {0: 1}], [{}, {0: 1}]])) == (1, 0)
    assert smith_valuations(mat(F, [[{-1: 1}, {0: 1}], [{}, {2: 1}]])) == (2, -1)
    with pytest.raises(Singular):
        smith_valuations(mat(F, [[{0: 1}, {0: 1}], [{0: 1}, {0: 1}]]))


def random_laurent_matrix(F, n, rng):
    while True:
        rows = [[{e: rng.randrange(F.q) for e in range(-2, 3) if rng.random() < 0.5} for _ in range(n)] for _ in range(n)]
        m = mat(F, rows)
        try:
            smith_by_minors(m)
            return m
        except Singular:
            continue


@pytest.mark.parametrize("q, n", [(2, 2), (3, 2), (4, 2), (2, 3), (5, 3)])
def test_pivoting_matches_minors(q, n):
    F = field(q)
    rng = random.Random(q * 10 + n)
    for _ in range(25):
        m = random_laurent_matrix(F, n, rng)
        assert smith_with_retry(m.with_precision, 4) == smith_by_minors(m)


def test_two_by_two_exhaustive_against_minors():
    F = field(2)
    entries = [{}, {0: 1}, {1: 1}, {0: 1, 1: 1}, {-1: 1}]
    for rows in itertools.product(entries, repeat=4):
        m = mat(F, [list(rows[:2]), list(rows[2:])])
        try:
            expected = smith_by_minors(m)
        except Singular:
            with pytest.raises(Singular):
                smith_valuations(m)
            continue
        assert smith_valuations(m) == expected


@pytest.mark.parametrize("q, n", [(2, 2), (3, 3)])
def test_unimodular_invariance(q, n):
    F = field(q)
    rng = random.Random(7 + q)
    for _ in range(3):
        m = random_laurent_matrix(F, n, rng)
        base = smith_by_minors(m)
        for _ in range(20):
            left, right = random_unimodular(F, n, rng), random_unimodular(F, n, rng)
            assert smith_with_retry((left * m * right).with_precision, 4) == base


def test_precision_independence():
    F = field(3)
    rng = random.Random(11)
    for _ in range(20):
        m = random_laurent_matrix(F, 3, rng)
        low = smith_with_retry(m.with_precision, 8)
        assert smith_valuations(m.with_precision(64)) == low


def test_envelope():
    with pytest.raises(EnvelopeExceeded):
        satake_count(4, 2, (1, 0, 0, 0), (0, 0, 0, 1))
    with pytest.raises(EnvelopeExceeded):
        satake_count(2, 7, (1, 0), (1, 0))
    with pytest.raises(EnvelopeExceeded):
        satake_count(2, 2, (5, 0), (5, 0))
    with pytest.raises(EnvelopeExceeded):
        convolve_count(3, 2, (1, 0, 0), (1, 0, 0), (2, 0, 0))


def test_unipotent_box():
    assert unipotent_box((2, 0), (1, 1)) == {(0, 1): 1}
    assert unipotent_box((1, 0, 0), (0, 0, 1)) == {(0, 1): 0, (0, 2): 0, (1, 2): 0}


def test_satake_count_examples():
    for q in (2, 3):
        assert satake_count(2, q, (1, 0), (0, 1)) == 1
        assert satake_count(2, q, (1, 0), (1, 0)) == q
        assert satake_count(2, q, (2, 0), (1, 1)) == q - 1


def test_satake_vector_examples():
    assert satake_vector(2, 2, (1, 0)) == LatticeAlgebraElement({(0, 1): 1, (1, 0): 2}, QMode(2))
    assert satake_vector(2, 3, (1, 1)) == LatticeAlgebraElement({(1, 1): 1}, QMode(3))
    gl3 = get_datum("GL3")
    m001 = from_m_coordinates(gl3, gl3.rho_ad, {(0, 0, 1): 1}, QMode(2))
    assert satake_vector(3, 2, (1, 0, 0)) == m001


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_satake_vector_matches_model_gl2(q):
    gl2 = get_datum("GL2")
    h = hecke_algebra(gl2)
    for mu in [(1, 0), (2, 0), (3, 0), (2, 1), (0, -2)]:
        model = from_m_coordinates(gl2, gl2.rho_ad, double_coset_basis(h, mu).coords).specialize(q)
        assert satake_vector(2, q, mu) == model


def test_hermite_cosets_count():
    # |K mu K / K| = q^<2rho, mu> (1 + 1/q) for GL2 non-central mu
    for q in (2, 3):
        assert len(hermite_cosets(q, (1, 0))) == q + 1
        assert len(hermite_cosets(q, (2, 0))) == q * q + q
        assert len(hermite_cosets(q, (1, 1))) == 1


def test_convolve_examples():
    for q in (2, 3, 4):
        assert convolve_count(2, q, (1, 0), (1, 0), (1, 1)) == q + 1
        assert convolve_count(2, q, (1, 0), (1, 0), (2, 0)) == 1
        assert convolve_count(2, q, (1, 0), (0, 0), (1, 0)) == 1
    assert convolution_table(2, (1, 0), (1, 0)) == {(2, 0): 1, (1, 1): 3}


@given(mu=st.sampled_from([(1, 0), (2, 0), (2, 1), (1, -1)]), nu=st.sampled_from([(1, 0), (2, 0), (0, -1)]), q=st.sampled_from([2, 3]))
def test_ct_is_multiplicative(mu, nu, q):
    lhs = satake_vector(2, q, mu) * satake_vector(2, q, nu)
    rhs = LatticeAlgebraElement({}, QMode(q))
    for kappa, c in convolution_table(q, mu, nu).items():
        rhs = rhs + satake_vector(2, q, kappa, spread=6).scale(c)
    assert lhs == rhs


def test_dominance_gl():
    assert dominates_gl((2, 0), (1, 1))
    assert dominates_gl((2, 0), (0, 2))
    assert not dominates_gl((1, 1), (2, 0))
    assert not dominates_gl((1, 0), (1, 1))
