from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satake.errors import NotDominant, NotFiniteOrder, NotFiniteType, PinningViolated, UnknownName
from satake.rootdata import (
    BasedRootDatum,
    catalog,
    dominance_leq,
    dump_datum,
    fixed_sublattice,
    get_datum,
    in_fixed_sublattice,
    load_datum,
    positive_roots,
    rho_ad,
    shift_from_weight,
    validate,
    weights_up_to_height,
)

ROOT_COUNTS = {"GL2": 1, "GL3": 3, "GL4": 6, "PGL2": 1, "SL2": 1, "PGL3": 3, "Sp4": 4, "SO5": 4, "G2": 6, "U3": 3}
NAMES = sorted(catalog())


def raw(**kw):
    base = dict(name="X", rank=2, simple_roots=[[1, -1]], simple_coroots=[[1, -1]])
    base.update(kw)
    return BasedRootDatum.from_dict(base)


def test_gl2_and_sl2_validate():
    assert validate(raw()).r == 1
    sl2 = validate(BasedRootDatum.from_dict(dict(name="S", rank=1, simple_roots=[[2]], simple_coroots=[[1]])))
    assert sl2.coroot_pairings((2,)) == (2,)


def test_unitary_involution_on_gl3():
    d = get_datum("U3")
    assert d.sigma_order == 2
    assert {d.apply_sigma(a) for a in d.simple_roots} == set(d.simple_roots)


@pytest.mark.parametrize(
    "kw, err",
    [
        (dict(simple_roots=[[1, -1]], simple_coroots=[[1, 0]]), NotFiniteType),
        (dict(rank=2, simple_roots=[[1, -1], [0, 1]], simple_coroots=[[1, -1], [-2, 2]]), NotFiniteType),
        (dict(sigma_matrix=[0, 1, 1, 0]), PinningViolated),
        (dict(sigma_matrix=[1, 1, 0, 1]), NotFiniteOrder),
    ],
)
def test_invalid_data_rejected(kw, err):
    with pytest.raises(err):
        validate(raw(**kw))


def test_unknown_name():
    with pytest.raises(UnknownName):
        get_datum("E8")


@pytest.mark.parametrize("name, count", sorted(ROOT_COUNTS.items()))
def test_positive_root_counts(name, count):
    assert len(positive_roots(get_datum(name))) == count


def test_positive_roots_examples():
    assert positive_roots(get_datum("PGL2")) == [(2,)]
    assert set(positive_roots(get_datum("GL3"))) == {(1, -1, 0), (0, 1, -1), (1, 0, -1)}


@pytest.mark.parametrize("name", NAMES)
def test_rho_ad_is_one_on_simple_roots_and_sigma_invariant(name):
    d = get_datum(name)
    rho = rho_ad(d)
    assert all(rho.pair(a) == 1 for a in d.simple_roots)
    for b in d.positive_roots:
        assert rho.pair(d.apply_sigma(b)) == rho.pair(b)
    assert set(map(d.apply_sigma, d.positive_roots)) == set(d.positive_roots)


def test_rho_ad_examples():
    assert rho_ad(get_datum("GL3")).pair((1, 0, -1)) == 2
    assert rho_ad(get_datum("PGL2")).pair((2,)) == 1


def test_shift_from_weight():
    d = get_datum("GL2")
    s = rho_ad(d) + shift_from_weight(d, (1, 0))
    assert s.pair((1, -1)) == 2
    assert shift_from_weight(get_datum("PGL2"), (1,)).pair((2,)) == 2
    with pytest.raises(NotDominant):
        shift_from_weight(d, (0, 1))


def test_dominance_examples():
    assert dominance_leq(get_datum("GL2"), (1, 1), (2, 0))
    assert dominance_leq(get_datum("GL3"), (1, 1, 1), (3, 0, 0))
    assert not dominance_leq(get_datum("GL3"), (3, 0, 0), (1, 1, 1))
    assert not dominance_leq(get_datum("GL2"), (1, 0), (2, 0))


@pytest.mark.parametrize("name", ["GL3", "Sp4", "G2", "U3"])
@given(data=st.data())
def test_dominance_is_a_partial_order(name, data):
    d = get_datum(name)
    pool = list(weights_up_to_height(d, 3))
    a, b, c = (data.draw(st.sampled_from(pool)) for _ in range(3))
    assert dominance_leq(d, a, a)
    if dominance_leq(d, a, b) and dominance_leq(d, b, a):
        assert a == b
    if dominance_leq(d, a, b) and dominance_leq(d, b, c):
        assert dominance_leq(d, a, c)


@pytest.mark.parametrize("name", NAMES)
@given(coeffs=st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_shifts_integral_on_root_lattice(name, coeffs):
    d = get_datum(name)
    beta = d.from_root_coordinates(coeffs[: d.r])
    for s in (d.rho_ad, d.two_rho):
        assert Fraction(s.pair(beta)).denominator == 1


def test_fixed_sublattices():
    assert fixed_sublattice(get_datum("GL3")) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert fixed_sublattice(get_datum("GL2xGL2")) == ((1, 0, 1, 0), (0, 1, 0, 1))
    assert fixed_sublattice(get_datum("U3")) == ((1, 0, -1),)
    assert in_fixed_sublattice(get_datum("U4"), (2, 1, -1, -2))
    assert not in_fixed_sublattice(get_datum("U4"), (1, 0, 0, 0))


def test_catalog_contents():
    names = set(catalog())
    assert {"GL2", "GL3", "GL4", "SL2", "SL3", "PGL2", "PGL3", "Sp4", "G2", "U2", "U3", "U4", "GL2xGL2"} <= names
    assert get_datum("PGL2").simple_roots == ((2,),)


def test_file_roundtrip(tmp_path):
    path = tmp_path / "d.json"
    dump_datum(get_datum("U3"), path)
    again = load_datum(path)
    assert again.raw == get_datum("U3").raw
    data = json.loads(path.read_text())
    assert data["sigma_permutation"] == [1, 0]
