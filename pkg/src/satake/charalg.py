"""The lattice group algebra over Z[q^±], its invariant m-basis, and the
fiber ring of the torus monoid V_T.

Coefficients follow a :class:`~satake.qpoly.QMode`; symbolic q is the
default and numeric q is the same code with a number in place of q.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import ConstraintViolated, ModeMismatch, NotAntidominant, NotInSpan, NotSigmaFixed
from .qpoly import SYMBOLIC, LaurentPoly, QMode
from .rootdata import RootDatum, ShiftCovector, Weight, height, vadd, vsub
from .weyl import FoldedGenerator, antidominant_in_fixed, antidominant_rep, folded_generators, w0_orbit


def _order_key(v: Weight):
    return (height(v), v)


class LatticeAlgebraElement:
    """Finitely supported map weight -> coefficient, i.e. sum c_w e^w."""

    __slots__ = ("mode", "_terms")

    def __init__(self, terms: Mapping[Weight, object] | Iterable = (), mode: QMode = SYMBOLIC):
        self.mode = mode
        acc: Dict[Weight, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = mode.coerce(c)
            if not c:
                continue
            w = tuple(w)
            acc[w] = acc[w] + c if w in acc else c
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff=1, mode: QMode = SYMBOLIC):
        return cls({tuple(weight): coeff}, mode)

    @property
    def terms(self) -> Dict[Weight, object]:
        return dict(self._terms)

    def support(self) -> List[Weight]:
        return sorted(self._terms, key=_order_key)

    def coefficient(self, weight: Sequence[int]):
        return self._terms.get(tuple(weight), self.mode.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "LatticeAlgebraElement"):
        if not isinstance(other, LatticeAlgebraElement):
            raise TypeError(f"cannot combine with {type(other).__name__}")
        if other.mode != self.mode:
            raise ModeMismatch(f"{self.mode} vs {other.mode}")

    def __add__(self, other):
        self._check(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc[w] + c if w in acc else c
        return LatticeAlgebraElement(acc, self.mode)

    def __neg__(self):
        return LatticeAlgebraElement({w: -c for w, c in self._terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LatticeAlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "LatticeAlgebraElement":
        c = self.mode.coerce(c)
        return LatticeAlgebraElement({w: c * v for w, v in self._terms.items()}, self.mode)

    def __pow__(self, n: int):
        result = one(len(next(iter(self._terms))) if self._terms else 0, self.mode)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LatticeAlgebraElement):
            return NotImplemented
        return self.mode == other.mode and self._terms == other._terms

    def __hash__(self):
        return hash((self.mode, frozenset(self._terms.items())))

    def specialize(self, q: int) -> "LatticeAlgebraElement":
        """Substitute a number for symbolic q."""
        if not self.mode.symbolic:
            raise ModeMismatch("element is already numeric")
        return LatticeAlgebraElement(self._terms, QMode(q))

    def to_records(self) -> List[list]:
        return [[list(w), str(self._terms[w])] for w in self.support()]

    @classmethod
    def from_records(cls, records, mode: QMode = SYMBOLIC):
        if mode.symbolic:
            return cls({tuple(w): LaurentPoly.parse(c) for w, c in records}, mode)
        from fractions import Fraction
        return cls({tuple(w): Fraction(c) for w, c in records}, mode)

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({self._terms[w]})*e^{w}" for w in self.support())

    __repr__ = __str__


def one(rank: int, mode: QMode = SYMBOLIC) -> LatticeAlgebraElement:
    return LatticeAlgebraElement.monomial((0,) * rank, 1, mode)


def multiply(a: LatticeAlgebraElement, b: LatticeAlgebraElement) -> LatticeAlgebraElement:
    """Group-algebra convolution e^x e^y = e^(x+y)."""
    a._check(b)
    acc: Dict[Weight, object] = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            w = vadd(wa, wb)
            c = ca * cb
            acc[w] = acc[w] + c if w in acc else c
    return LatticeAlgebraElement(acc, a.mode)


def _resolve_word(datum: RootDatum, word) -> List[FoldedGenerator]:
    gens = folded_generators(datum)
    out = []
    for g in word:
        out.append(gens[g] if isinstance(g, int) else g)
    return out


def twisted_action(datum: RootDatum, shift: ShiftCovector, word, x: LatticeAlgebraElement) -> LatticeAlgebraElement:
    """w . e^l = q^<shift, w l - l> e^(w l); ``word`` lists folded generators
    (objects or indices), applied rightmost first.  Rational level only:
    negative powers of q can appear."""
    gens = _resolve_word(datum, word)
    mode = x.mode
    acc = {}
    for w, c in x.terms.items():
        if not datum.is_sigma_fixed(w):
            raise NotSigmaFixed(f"{w} is not fixed by sigma")
        v = w
        for g in reversed(gens):
            v = g.apply(datum, v)
        acc[v] = c * mode.qpow(shift.pair_int(vsub(v, w)))
    return LatticeAlgebraElement(acc, mode)


@lru_cache(maxsize=None)
def _m_terms(datum: RootDatum, shift: ShiftCovector, lam: Weight) -> Tuple[Tuple[Weight, int], ...]:
    orbit = w0_orbit(datum, lam)
    return tuple((mu, shift.pair_int(vsub(mu, lam))) for mu in orbit.elements)


def m_element(datum: RootDatum, shift: ShiftCovector, lam: Sequence[int], mode: QMode = SYMBOLIC) -> LatticeAlgebraElement:
    """sum over the W0-orbit of lam of q^<shift, l' - lam> e^l'."""
    lam = tuple(lam)
    if not datum.is_sigma_fixed(lam):
        raise NotSigmaFixed(f"{lam} is not fixed by sigma")
    if not datum.is_antidominant(lam):
        raise NotAntidominant(f"{lam} is not antidominant")
    return LatticeAlgebraElement({mu: mode.qpow(e) for mu, e in _m_terms(datum, shift, lam)}, mode)


def from_m_coordinates(datum: RootDatum, shift: ShiftCovector, coords: Mapping[Weight, object], mode: QMode = SYMBOLIC) -> LatticeAlgebraElement:
    total = LatticeAlgebraElement({}, mode)
    for lam in sorted(coords, key=_order_key):
        c = coords[lam]
        if c:
            total = total + m_element(datum, shift, lam, mode).scale(c)
    return total


def expand_in_m_basis(datum: RootDatum, shift: ShiftCovector, x: LatticeAlgebraElement) -> Dict[Weight, object]:
    """Coordinates of x in the m-basis; raises NotInSpan unless the
    reconstruction leaves an exactly zero residual."""
    coords: Dict[Weight, object] = {}
    for w in x.support():
        if not datum.is_sigma_fixed(w):
            raise NotInSpan(f"support weight {w} is not sigma-fixed")
        rep = antidominant_in_fixed(datum, w)
        if rep not in coords:
            coords[rep] = x.coefficient(rep)
    coords = {k: v for k, v in coords.items() if v}
    residual = x - from_m_coordinates(datum, shift, coords, x.mode)
    if not residual.is_zero():
        bad = residual.support()[0]
        raise NotInSpan(f"residual {residual.coefficient(bad)} at {bad}")
    return dict(sorted(coords.items(), key=lambda kv: _order_key(kv[0])))


# ---------------------------------------------------------------------------
# the fiber ring of the torus monoid


def vt_pair_ok(datum: RootDatum, lam: Sequence[int], nu: Sequence[int]) -> bool:
    total = vadd(nu, lam)
    if not datum.in_root_lattice(total):
        return False
    coords = datum.root_coordinates(vadd(nu, antidominant_rep(datum, lam)))
    return coords is not None and all(c >= 0 for c in coords)


class VTElement:
    """Integer combination of monomials e1^lam (x) e2^nu on V_T."""

    __slots__ = ("datum", "_terms")

    def __init__(self, datum: RootDatum, terms: Mapping[Tuple[Weight, Weight], int] | Iterable = ()):
        self.datum = datum
        acc: Dict[Tuple[Weight, Weight], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (lam, nu), c in items:
            key = (tuple(lam), tuple(nu))
            if c and not vt_pair_ok(datum, *key):
                raise ConstraintViolated(f"pair {key} leaves the V_T cone")
            acc[key] = acc.get(key, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}

    @property
    def terms(self) -> Dict[Tuple[Weight, Weight], int]:
        return dict(self._terms)

    def __add__(self, other: "VTElement") -> "VTElement":
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return VTElement(self.datum, acc)

    def __mul__(self, other: "VTElement") -> "VTElement":
        return vt_multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, VTElement) and self._terms == other._terms

    def __repr__(self):
        return f"VTElement({self._terms})"


def vt_multiply(a: VTElement, b: VTElement) -> VTElement:
    acc: Dict[Tuple[Weight, Weight], int] = {}
    for (l1, n1), c1 in a._terms.items():
        for (l2, n2), c2 in b._terms.items():
            key = (vadd(l1, l2), vadd(n1, n2))
            acc[key] = acc.get(key, 0) + c1 * c2
    return VTElement(a.datum, acc)


def vt_embed(datum: RootDatum, shift: ShiftCovector, mode: QMode, a: VTElement) -> LatticeAlgebraElement:
    """e1^lam (x) e2^nu -> q^<shift, nu + lam> e^lam."""
    acc: Dict[Weight, object] = {}
    for (lam, nu), c in a.terms.items():
        if not datum.is_sigma_fixed(lam):
            raise NotSigmaFixed(f"{lam} is not fixed by sigma")
        term = mode.qpow(shift.pair_int(vadd(nu, lam))) * c
        acc[lam] = acc[lam] + term if lam in acc else term
    return LatticeAlgebraElement(acc, mode)


def vt_section(datum: RootDatum, a: VTElement) -> Dict[Weight, int]:
    """Pullback along the section: e1^lam (x) e2^nu -> ebar^(nu + lam).

    The result lives in the monoid algebra of nonnegative root
    combinations, keyed by the lattice vector nu + lam."""
    acc: Dict[Weight, int] = {}
    for (lam, nu), c in a.terms.items():
        key = vadd(nu, lam)
        acc[key] = acc.get(key, 0) + c
    return {k: v for k, v in acc.items() if v}


def vt_grade(datum: RootDatum, beta: Sequence[int]) -> VTElement:
    """Pullback along d: ebar^beta -> 1 (x) e2^beta."""
    beta = tuple(beta)
    coords = datum.root_coordinates(beta)
    if coords is None or any(c < 0 for c in coords):
        raise ConstraintViolated(f"{beta} is not a nonnegative combination of simple roots")
    return VTElement(datum, {((0,) * datum.rank, beta): 1})


def m_vt(datum: RootDatum, lam: Sequence[int]) -> VTElement:
    """The invariant V_T element whose embedding is the m-basis element of lam."""
    lam = tuple(lam)
    if not datum.is_antidominant(lam):
        raise NotAntidominant(f"{lam} is not antidominant")
    nu = tuple(-x for x in lam)
    return VTElement(datum, {(mu, nu): 1 for mu in w0_orbit(datum, lam).elements})
