"""Kostka-Foulkes polynomials for split data, plus the IC and character
vectors that the double-coset basis is built from.

The graded pieces of the principal-nilpotent filtration on a weight space
have generating function K_{mu, lam+}(q) (the q-analogue of weight
multiplicity), computed here by the alternating sum over W.  The sum is
taken in the doubled lattice so that the half-sum of positive roots never
has to be a lattice vector.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .errors import NonPolynomial, NotDominant, SigmaNontrivial
from .qpoly import LaurentPoly, QMode, SYMBOLIC
from .rootdata import RootDatum, ShiftCovector, Weight, dominance_leq, height, mat_vec, pair, vadd, vsub
from .weyl import DEFAULT_GROUP_CAP, antidominant_rep, dominant_rep, weyl_group

ZERO = LaurentPoly()
ONE = LaurentPoly(1)


def _require_split(datum: RootDatum):
    if not datum.split:
        raise SigmaNontrivial(f"{datum.name}: sigma is nontrivial, graded traces are unavailable")


def _require_dominant(datum: RootDatum, mu: Weight):
    if not datum.is_dominant(mu):
        raise NotDominant(f"{mu} is not dominant")


@lru_cache(maxsize=None)
def _positive_root_coords(datum: RootDatum) -> Tuple[Tuple[int, ...], ...]:
    return tuple(datum.root_coordinates(a) for a in datum.positive_roots)


@lru_cache(maxsize=200_000)
def _partition(datum: RootDatum, target: Tuple[int, ...], k: int) -> LaurentPoly:
    """Generating polynomial of ways to write target using roots k, k+1, ..."""
    roots = _positive_root_coords(datum)
    if not any(target):
        return ONE
    if k == len(roots):
        return ZERO
    root = roots[k]
    total = ZERO
    n = 0
    cur = target
    while all(c >= 0 for c in cur):
        rest = _partition(datum, cur, k + 1)
        if rest:
            total = total + rest.shift(n)
        n += 1
        cur = tuple(c - r for c, r in zip(cur, root))
    return total


def q_kostant_partition(datum: RootDatum, beta: Sequence[int]) -> LaurentPoly:
    """Sum over ways of writing beta as sum n_a a (a > 0) of q^(sum n_a)."""
    _require_split(datum)
    coords = datum.root_coordinates(tuple(beta))
    if coords is None or any(c < 0 for c in coords):
        return ZERO
    return _partition(datum, coords, 0)


def kostka_foulkes(datum: RootDatum, mu: Sequence[int], lam: Sequence[int], group_cap: int = DEFAULT_GROUP_CAP) -> LaurentPoly:
    """K_{mu, lam}(q) for dominant mu, lam."""
    _require_split(datum)
    mu, lam = tuple(mu), tuple(lam)
    _require_dominant(datum, mu)
    _require_dominant(datum, lam)
    if not dominance_leq(datum, lam, mu):
        return ZERO
    two_rho = datum.rho_hat_doubled
    top = tuple(2 * x + y for x, y in zip(mu, two_rho))
    base = tuple(2 * x + y for x, y in zip(lam, two_rho))
    total = ZERO
    for w, length in weyl_group(datum, group_cap):
        diff = vsub(mat_vec(w, top), base)
        if any(x % 2 for x in diff):
            raise ArithmeticError(f"w(2mu+2rho) - (2lam+2rho) = {diff} is not even")
        p = q_kostant_partition(datum, tuple(x // 2 for x in diff))
        if p:
            total = total + (p if length % 2 == 0 else -p)
    return total


# ---------------------------------------------------------------------------
# Freudenthal, an independent route to the q = 1 value


@lru_cache(maxsize=None)
def _invariant_form(datum: RootDatum) -> Tuple[Tuple[int, ...], ...]:
    """Gram matrix of a W-invariant positive definite form on X (x) Q."""
    n = datum.rank
    gram = [[0] * n for _ in range(n)]
    for w, _ in weyl_group(datum):
        cols = list(zip(*w))
        for i in range(n):
            for j in range(n):
                gram[i][j] += pair(cols[i], cols[j])
    return tuple(tuple(row) for row in gram)


def _form(datum: RootDatum, x: Sequence, y: Sequence):
    g = _invariant_form(datum)
    return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])


def freudenthal_multiplicity(datum: RootDatum, mu: Sequence[int], lam: Sequence[int]) -> int:
    """dim of the lam-weight space of the irreducible module of highest weight mu."""
    _require_split(datum)
    mu = tuple(mu)
    _require_dominant(datum, mu)
    return _freudenthal(datum, mu, dominant_rep(datum, tuple(lam)))


@lru_cache(maxsize=None)
def _freudenthal(datum: RootDatum, mu: Weight, lam: Weight) -> int:
    if lam == mu:
        return 1
    if not dominance_leq(datum, lam, mu):
        return 0
    rho = tuple(Fraction(x, 2) for x in datum.rho_hat_doubled)
    mr = tuple(a + b for a, b in zip(mu, rho))
    lr = tuple(a + b for a, b in zip(lam, rho))
    denom = _form(datum, mr, mr) - _form(datum, lr, lr)
    acc = Fraction(0)
    for alpha in datum.positive_roots:
        k = 1
        while True:
            v = tuple(x + k * a for x, a in zip(lam, alpha))
            if not dominance_leq(datum, v, mu):
                break
            m = _freudenthal(datum, mu, dominant_rep(datum, v))
            if m:
                acc += m * _form(datum, v, alpha)
            k += 1
    value = 2 * acc / denom
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"Freudenthal produced {value} at {lam}")
    return int(value)


def weight_multiplicities(datum: RootDatum, mu: Sequence[int]) -> Dict[Weight, int]:
    """Dominant weights lam <= mu with their multiplicities (Freudenthal)."""
    mu = tuple(mu)
    return {lam: m for lam in lower_dominant_weights(datum, mu) if (m := freudenthal_multiplicity(datum, mu, lam))}


@lru_cache(maxsize=None)
def _lower_dominant(datum: RootDatum, mu: Weight) -> Tuple[Weight, ...]:
    bottom = antidominant_rep(datum, mu)
    budget = datum.rho_ad.pair_int(vsub(mu, bottom))
    found = []
    r = datum.r
    for coords in itertools.product(range(budget + 1), repeat=r):
        if sum(coords) > budget:
            continue
        v = vsub(mu, datum.from_root_coordinates(coords))
        if datum.is_dominant(v):
            found.append(v)
    found.sort(key=lambda v: (datum.rho_ad.pair(vsub(mu, v)), v))
    return tuple(found)


def lower_dominant_weights(datum: RootDatum, mu: Sequence[int]) -> List[Weight]:
    """All dominant mu' with mu' <= mu, highest first; mu itself included."""
    mu = tuple(mu)
    _require_dominant(datum, mu)
    return list(_lower_dominant(datum, mu))


# ---------------------------------------------------------------------------
# Satake images of irreducible characters


def lowest_weight(datum: RootDatum, mu: Weight) -> Weight:
    return antidominant_rep(datum, mu)


def ic_coefficient(datum: RootDatum, mu: Sequence[int], lam: Sequence[int], shift: ShiftCovector | None = None) -> LaurentPoly:
    """Value of the sign-normalised IC function of mu on the double coset of lam.

    This is q^<rho_ad, lam- - w0 mu> K_{mu, lam+}(q^-1), with lam- / lam+ the
    antidominant / dominant conjugates of lam; it must be a polynomial.
    """
    _require_split(datum)
    mu = tuple(mu)
    _require_dominant(datum, mu)
    shift = datum.rho_ad if shift is None else shift
    lam_minus = antidominant_rep(datum, tuple(lam))
    lam_plus = dominant_rep(datum, lam_minus)
    k = kostka_foulkes(datum, mu, lam_plus)
    if not k:
        return ZERO
    exponent = shift.pair_int(vsub(lam_minus, lowest_weight(datum, mu)))
    value = k.substitute_inverse().shift(exponent)
    if not value.is_polynomial():
        raise NonPolynomial(
            f"deg K_({mu},{lam_plus}) = {k.degree()} exceeds <rho_ad, lam - w0 mu> = {exponent}"
        )
    return value


def ic_vector(datum: RootDatum, mu: Sequence[int]) -> Dict[Weight, LaurentPoly]:
    """Double-coset coordinates (dominant labels) of the normalised IC function."""
    mu = tuple(mu)
    out = {}
    for lam in lower_dominant_weights(datum, mu):
        c = ic_coefficient(datum, mu, lam)
        if c:
            out[lam] = c
    return out


def ic_sign(datum: RootDatum, mu: Sequence[int]) -> int:
    """(-1)^<2rho, mu>, the sign dropped by the normalisation."""
    return -1 if datum.two_rho.pair_int(tuple(mu)) % 2 else 1


def character_image(datum: RootDatum, mu: Sequence[int], shift: ShiftCovector | None = None, mode: QMode = SYMBOLIC) -> Dict[Weight, object]:
    """m-coordinates of the constant term of the normalised trace function of V_mu.

    Each weight lam of V_mu contributes dim V_mu(lam) q^<shift, lam - w0 mu> e^lam,
    so the coordinate at an antidominant lam is that multiplicity times the
    power of q; the coordinate at w0 mu is 1.
    """
    _require_split(datum)
    mu = tuple(mu)
    _require_dominant(datum, mu)
    shift = datum.rho_ad if shift is None else shift
    low = lowest_weight(datum, mu)
    coords = {}
    for lam_plus in lower_dominant_weights(datum, mu):
        mult = kostka_foulkes(datum, mu, lam_plus).evaluate(1)
        if mult:
            lam = antidominant_rep(datum, lam_plus)
            coords[lam] = mode.qpow(shift.pair_int(vsub(lam, low))) * mult
    return dict(sorted(coords.items(), key=lambda kv: (height(kv[0]), kv[0])))
