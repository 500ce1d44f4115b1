from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satake.errors import Mismatch, NotAntidominant, NotDominant, NotPrimePower, SigmaNontrivial
from satake.hecke import (
    HeckeElement,
    dc_structure_constants,
    double_coset_basis,
    hecke_algebra,
    hecke_multiply,
    modp_structure,
    scaling_compare,
    structure_constants,
    structure_table,
    to_double_coset_coords,
    weight_hecke,
)
from satake.charalg import m_element
from satake.qpoly import Q, LaurentPoly
from satake.rootdata import antidominant_fixed_weights, dominant_weights_up_to_height, get_datum

ONE = LaurentPoly(1)
GL2 = get_datum("GL2")


def test_structure_constants_gl2():
    h = hecke_algebra(GL2)
    assert structure_constants(h, (0, 1), (0, 1)) == {(0, 2): ONE, (1, 1): 2 * Q}
    assert structure_constants(hecke_algebra(GL2, q=3), (0, 1), (0, 1)) == {(0, 2): 1, (1, 1): 6}


def test_unit_and_element_validation():
    h = hecke_algebra(GL2)
    x = h.basis((0, 2))
    assert x * h.unit() == x
    with pytest.raises(NotAntidominant):
        h.basis((2, 0))


def test_structure_table_rows():
    h = hecke_algebra(get_datum("PGL2"))
    rows = structure_table(h, [(0,), (-1,)])
    assert ((-1,), (-1,), (0,), 2 * Q) in rows
    assert ((0,), (0,), (0,), ONE) in rows


@pytest.mark.parametrize("name", ["GL2", "GL3", "PGL3", "Sp4", "G2", "U3", "GL2xGL2"])
@given(data=st.data())
def test_multiplication_axioms(name, data):
    h = hecke_algebra(get_datum(name))
    pool = antidominant_fixed_weights(h.datum, 3)
    a, b, c = (h.basis(data.draw(st.sampled_from(pool))) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


def test_modp():
    h = hecke_algebra(get_datum("GL3"), q=4)
    assert modp_structure(h, (0, 0, 1), (-1, 0, 0)) == {(-1, 0, 1): 1}
    with pytest.raises(NotPrimePower):
        modp_structure(hecke_algebra(GL2), (0, 1), (0, 1))


def test_weight_hecke():
    h = hecke_algebra(GL2)
    hv = weight_hecke(h, (1, 0))
    assert hv.shift.pair((1, -1)) == 2
    assert structure_constants(hv, (0, 1), (0, 1))[(1, 1)] == 2 * Q ** 2
    assert weight_hecke(h, (0, 0)).shift == h.shift
    with pytest.raises(NotDominant):
        weight_hecke(h, (0, 1))
    with pytest.raises(NotPrimePower):
        weight_hecke(hecke_algebra(GL2, q=4), (1, 0))
    weight_hecke(hecke_algebra(GL2, q=5), (1, 0))


@pytest.mark.parametrize("name, lam", [("GL2", (1, 0)), ("GL3", (1, 1, 0)), ("Sp4", (1, 0)), ("G2", (2, 3)), ("U3", (1, 0, -1))])
def test_scaling_identity_batch(name, lam):
    d = get_datum(name)
    h = hecke_algebra(d)
    hv = weight_hecke(h, lam)
    pool = antidominant_fixed_weights(d, 3)
    for i, a in enumerate(pool):
        for b in pool[i:]:
            assert scaling_compare(h, hv, a, b).ok


def test_dominant_label_reading_needs_w0_symmetric_shift():
    d = get_datum("GL3")
    h = hecke_algebra(d)
    hv = weight_hecke(h, (1, 0, 0))
    assert scaling_compare(h, hv, (-1, 0, 0), (-1, 0, 0)).ok
    report = scaling_compare(h, hv, (-1, 0, 0), (-1, 0, 0), labels="dominant", raise_on_mismatch=False)
    assert not report.ok and report.problems
    with pytest.raises(Mismatch):
        scaling_compare(h, hv, (-1, 0, 0), (-1, 0, 0), labels="dominant")


def test_dominant_label_reading_for_rank_one():
    h = hecke_algebra(GL2)
    hv = weight_hecke(h, (2, 0))
    assert scaling_compare(h, hv, (0, 1), (0, 1), labels="dominant").ok


def test_double_coset_basis_examples():
    h = hecke_algebra(GL2)
    assert double_coset_basis(h, (1, 0)).coords == {(0, 1): ONE}
    assert double_coset_basis(h, (2, 0)).coords == {(0, 2): ONE, (1, 1): Q - 1}
    assert double_coset_basis(h, (0, 0)) == h.unit()
    with pytest.raises(SigmaNontrivial):
        double_coset_basis(hecke_algebra(get_datum("U3")), (1, 0, -1))


def test_dc_structure_constants_gl2():
    h = hecke_algebra(GL2)
    assert dc_structure_constants(h, (1, 0), (1, 0)) == {(2, 0): ONE, (1, 1): 1 + Q}
    assert dc_structure_constants(h, (1, 0), (0, -1)) == {(1, -1): ONE, (0, 0): 1 + Q}


@pytest.mark.parametrize("name", ["GL2", "GL3", "PGL2", "PGL3", "Sp4", "G2"])
def test_dc_basis_is_unitriangular_and_roundtrips(name):
    d = get_datum(name)
    h = hecke_algebra(d)
    for mu in dominant_weights_up_to_height(d, 3):
        x = double_coset_basis(h, mu)
        assert all(c.is_polynomial() for c in x.coords.values())
        assert to_double_coset_coords(h, x) == {mu: ONE}


@pytest.mark.parametrize("name", ["GL2", "GL3", "PGL2", "Sp4"])
def test_dc_structure_constants_nonnegative_at_prime_powers(name):
    d = get_datum(name)
    h = hecke_algebra(d)
    pool = dominant_weights_up_to_height(d, 2)
    for i, mu in enumerate(pool):
        for nu in pool[i:]:
            for kappa, c in dc_structure_constants(h, mu, nu).items():
                assert c.is_polynomial()
                assert all(c.evaluate(q) >= 0 for q in (2, 3, 4, 5)), (mu, nu, kappa, c)


def test_numeric_and_symbolic_products_agree():
    d = get_datum("Sp4")
    hs, hn = hecke_algebra(d), hecke_algebra(d, q=5)
    pool = antidominant_fixed_weights(d, 3)
    for a in pool[:6]:
        for b in pool[:6]:
            sym = structure_constants(hs, a, b)
            num = hecke_multiply(hn, hn.basis(a), hn.basis(b)).coords
            assert num == {k: c.evaluate(5) for k, c in sym.items()}


def test_hecke_element_arithmetic():
    h = hecke_algebra(GL2)
    x = HeckeElement(h, {(0, 1): 1})
    y = x + x.scale(Q)
    assert y.coords == {(0, 1): 1 + Q}
    assert (y - x).coords == {(0, 1): Q}
