from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satake.charalg import (
    LatticeAlgebraElement,
    VTElement,
    expand_in_m_basis,
    from_m_coordinates,
    m_element,
    m_vt,
    twisted_action,
    vt_embed,
    vt_grade,
    vt_multiply,
    vt_section,
)
from satake.errors import ConstraintViolated, ModeMismatch, NotAntidominant, NotInSpan, NotSigmaFixed
from satake.qpoly import Q, SYMBOLIC, LaurentPoly, QMode
from satake.rootdata import antidominant_fixed_weights, get_datum, zero_shift

GL2 = get_datum("GL2")


def e(*w, c=1, mode=SYMBOLIC):
    return LatticeAlgebraElement.monomial(w, c, mode)


def test_m_element_gl2():
    assert m_element(GL2, GL2.rho_ad, (0, 1)) == e(0, 1) + e(1, 0, c=Q)
    assert m_element(GL2, GL2.rho_ad, (1, 1)) == e(1, 1)


def test_m_element_weight_shift():
    d = GL2
    from satake.rootdata import shift_from_weight

    s = d.rho_ad + shift_from_weight(d, (1, 0))
    assert m_element(d, s, (0, 1)) == e(0, 1) + e(1, 0, c=Q ** 2)


def test_m_element_twisted():
    u3 = get_datum("U3")
    x = m_element(u3, u3.rho_ad, (-1, 0, 1))
    assert x == e(-1, 0, 1) + e(1, 0, -1, c=Q ** 4)


def test_m_element_rejects_bad_index():
    with pytest.raises(NotAntidominant):
        m_element(GL2, GL2.rho_ad, (1, 0))
    with pytest.raises(NotSigmaFixed):
        m_element(get_datum("U3"), get_datum("U3").rho_ad, (0, 0, 1))


def test_product_expansion_examples():
    x = m_element(GL2, GL2.rho_ad, (0, 1))
    assert expand_in_m_basis(GL2, GL2.rho_ad, x * x) == {(0, 2): LaurentPoly(1), (1, 1): 2 * Q}
    pgl2 = get_datum("PGL2")
    y = m_element(pgl2, pgl2.rho_ad, (-1,))
    assert expand_in_m_basis(pgl2, pgl2.rho_ad, y * y) == {(-2,): LaurentPoly(1), (0,): 2 * Q}


def test_non_invariant_element_not_in_span():
    with pytest.raises(NotInSpan):
        expand_in_m_basis(GL2, GL2.rho_ad, e(1, 0))


def test_mode_mismatch():
    with pytest.raises(ModeMismatch):
        e(0, 0) + e(0, 0, mode=QMode(2))


def test_zero_shift_gives_orbit_sums():
    d = get_datum("GL3")
    x = m_element(d, zero_shift(d), (0, 0, 1))
    assert x == e(0, 0, 1) + e(0, 1, 0) + e(1, 0, 0)


def test_records_roundtrip():
    x = m_element(GL2, GL2.rho_ad, (0, 2)) * e(1, 1, c=Q - 3)
    assert LatticeAlgebraElement.from_records(x.to_records()) == x
    y = x.specialize(5)
    assert LatticeAlgebraElement.from_records(y.to_records(), QMode(5)) == y


@pytest.mark.parametrize("name", ["GL2", "GL3", "Sp4", "G2", "U3", "GL2xGL2"])
def test_twisted_action_fixes_m_elements_and_moves_monomials(name):
    d = get_datum(name)
    gens = list(range(len(d.sigma_orbits)))
    for lam in antidominant_fixed_weights(d, 3):
        x = m_element(d, d.rho_ad, lam)
        for g in gens:
            assert twisted_action(d, d.rho_ad, [g], x) == x
    lam = next(v for v in antidominant_fixed_weights(d, 3) if any(d.coroot_pairings(v)))
    mono = e(*lam)
    assert any(twisted_action(d, d.rho_ad, [g], mono) != mono for g in gens)


def test_twisted_action_is_an_action():
    d = get_datum("GL3")
    x = e(2, 0, -1) + e(0, 1, 0, c=Q)
    for word in ([0, 0], [1, 1], [0, 1, 0, 1, 0, 1]):
        assert twisted_action(d, d.rho_ad, word, x) == x
    assert twisted_action(d, d.rho_ad, [0, 1, 0], x) == twisted_action(d, d.rho_ad, [1, 0, 1], x)


def test_twisted_action_at_numeric_q_uses_rationals():
    y = twisted_action(GL2, GL2.rho_ad, [0], e(1, 0, mode=QMode(3)))
    assert y.coefficient((0, 1)) == Fraction(1, 3)


@pytest.mark.parametrize("name", ["GL2", "GL3", "PGL2", "Sp4", "G2", "U3"])
@given(data=st.data())
def test_hecke_products_commute_and_associate(name, data):
    d = get_datum(name)
    pool = antidominant_fixed_weights(d, 3)
    a, b, c = (m_element(d, d.rho_ad, data.draw(st.sampled_from(pool))) for _ in range(3))
    assert a * b == b * a
    lhs = from_m_coordinates(d, d.rho_ad, expand_in_m_basis(d, d.rho_ad, a * b)) * c
    rhs = a * from_m_coordinates(d, d.rho_ad, expand_in_m_basis(d, d.rho_ad, b * c))
    assert lhs == rhs
    expand_in_m_basis(d, d.rho_ad, lhs)


def test_vt_basics():
    d = GL2
    x = m_vt(d, (0, 1))
    assert vt_embed(d, d.rho_ad, SYMBOLIC, x) == m_element(d, d.rho_ad, (0, 1))
    assert vt_section(d, x) == {(0, 0): 1, (1, -1): 1}
    g = vt_grade(d, (1, -1))
    assert vt_embed(d, d.rho_ad, SYMBOLIC, g) == e(0, 0, c=Q)
    with pytest.raises(ConstraintViolated):
        vt_grade(d, (-1, 1))
    with pytest.raises(ConstraintViolated):
        VTElement(d, {((1, 0), (-1, 0)): 1})


@pytest.mark.parametrize("name", ["GL2", "GL3", "Sp4", "U3"])
@given(data=st.data())
def test_vt_embedding_is_multiplicative(name, data):
    d = get_datum(name)
    pool = antidominant_fixed_weights(d, 3)
    a = m_vt(d, data.draw(st.sampled_from(pool)))
    b = m_vt(d, data.draw(st.sampled_from(pool)))
    prod = vt_multiply(a, b)
    for mode in (SYMBOLIC, QMode(2)):
        assert vt_embed(d, d.rho_ad, mode, prod) == vt_embed(d, d.rho_ad, mode, a) * vt_embed(d, d.rho_ad, mode, b)
    sa, sb, sp = vt_section(d, a), vt_section(d, b), vt_section(d, prod)
    conv = {}
    for k1, c1 in sa.items():
        for k2, c2 in sb.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            conv[k] = conv.get(k, 0) + c1 * c2
    assert sp == {k: v for k, v in conv.items() if v}
