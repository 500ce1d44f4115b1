"""The spherical Hecke algebra, modelled by the m-basis of the invariant ring.

A :class:`HeckeAlgebraHandle` pairs a datum with a shift covector
(``rho_ad`` for the usual Hecke algebra, ``lambda_ad + rho_ad`` for
weight-V algebras) and a coefficient mode.  Products are computed by lifting to the lattice algebra,
multiplying there, and re-expanding; closure of the m-span under
multiplication is exactly what the expansion certifies.

In the split case the double-coset basis 1_{K mu K} is rebuilt from the
normalised IC functions by unitriangular inversion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .charalg import LatticeAlgebraElement, expand_in_m_basis, from_m_coordinates, m_element
from .errors import Mismatch, NotAntidominant, NotPrimePower, NotSigmaFixed, SigmaNontrivial, ValidationError
from .kostka import character_image, ic_coefficient, lower_dominant_weights, ic_sign
from .qpoly import SYMBOLIC, LaurentPoly, QMode, is_prime, prime_power_base
from .rootdata import RootDatum, ShiftCovector, Weight, height, shift_from_weight, vadd, vsub
from .weyl import antidominant_rep, dominant_rep


def _order_key(v: Weight):
    return (height(v), v)


@dataclass(frozen=True)
class HeckeAlgebraHandle:
    datum: RootDatum
    shift: ShiftCovector
    mode: QMode = SYMBOLIC

    def __post_init__(self):
        for i, a in enumerate(self.datum.simple_roots):
            x = self.shift.pair(a)
            if x.denominator != 1:
                raise ValidationError(f"shift is not integral on simple root {i}")
            if x < 0:
                raise ValidationError(f"shift is not dominant on simple root {i}")
        if any(self.shift.pair(self.datum.apply_sigma(a)) != self.shift.pair(a) for a in self.datum.simple_roots):
            raise NotSigmaFixed("shift is not sigma-invariant")

    @property
    def is_rho(self) -> bool:
        return self.shift == self.datum.rho_ad

    def element(self, coords: Mapping[Sequence[int], object]) -> "HeckeElement":
        return HeckeElement(self, {tuple(k): v for k, v in coords.items()})

    def basis(self, lam: Sequence[int]) -> "HeckeElement":
        return self.element({tuple(lam): 1})

    def unit(self) -> "HeckeElement":
        return self.basis((0,) * self.datum.rank)

    def specialize(self, q: int) -> "HeckeAlgebraHandle":
        return HeckeAlgebraHandle(self.datum, self.shift, QMode(q))


def hecke_algebra(datum: RootDatum, shift: ShiftCovector | None = None, q: int | None = None) -> HeckeAlgebraHandle:
    return HeckeAlgebraHandle(datum, datum.rho_ad if shift is None else shift, QMode(q))


class HeckeElement:
    """m-basis coordinates, keyed by antidominant sigma-fixed weights."""

    __slots__ = ("handle", "coords")

    def __init__(self, handle: HeckeAlgebraHandle, coords: Mapping[Weight, object]):
        self.handle = handle
        mode = handle.mode
        clean = {}
        for k, v in coords.items():
            k = tuple(k)
            if not handle.datum.is_antidominant(k):
                raise NotAntidominant(f"{k} is not antidominant")
            if not handle.datum.is_sigma_fixed(k):
                raise NotSigmaFixed(f"{k} is not sigma-fixed")
            v = mode.coerce(v)
            if v:
                clean[k] = v
        self.coords = dict(sorted(clean.items(), key=lambda kv: _order_key(kv[0])))

    def to_lattice(self) -> LatticeAlgebraElement:
        h = self.handle
        return from_m_coordinates(h.datum, h.shift, self.coords, h.mode)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return hecke_multiply(self.handle, self, other)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        acc = dict(self.coords)
        for k, v in other.coords.items():
            acc[k] = acc[k] + v if k in acc else v
        return HeckeElement(self.handle, acc)

    def scale(self, c) -> "HeckeElement":
        c = self.handle.mode.coerce(c)
        return HeckeElement(self.handle, {k: c * v for k, v in self.coords.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.coords == other.coords

    def __repr__(self):
        body = " + ".join(f"({v})*m{k}" for k, v in self.coords.items()) or "0"
        return f"HeckeElement({body})"


def hecke_multiply(h: HeckeAlgebraHandle, a: HeckeElement, b: HeckeElement) -> HeckeElement:
    x = from_m_coordinates(h.datum, h.shift, a.coords, h.mode)
    y = from_m_coordinates(h.datum, h.shift, b.coords, h.mode)
    return HeckeElement(h, expand_in_m_basis(h.datum, h.shift, x * y))


@lru_cache(maxsize=None)
def _structure(datum: RootDatum, shift: ShiftCovector, lam: Weight, mu: Weight) -> Tuple[Tuple[Weight, LaurentPoly], ...]:
    prod = m_element(datum, shift, lam) * m_element(datum, shift, mu)
    return tuple(expand_in_m_basis(datum, shift, prod).items())


def structure_constants(h: HeckeAlgebraHandle, lam: Sequence[int], mu: Sequence[int]) -> Dict[Weight, object]:
    """Coordinates of m_lam * m_mu; computed symbolically then specialised."""
    lam, mu = tuple(lam), tuple(mu)
    if _order_key(mu) < _order_key(lam):
        lam, mu = mu, lam
    table = _structure(h.datum, h.shift, lam, mu)
    out = {}
    for k, v in table:
        v = h.mode.coerce(v)
        if v:
            out[k] = v
    return out


def structure_table(h: HeckeAlgebraHandle, weights: Iterable[Sequence[int]]) -> List[Tuple[Weight, Weight, Weight, object]]:
    """Rows (lam, mu, kappa, c) for all unordered pairs lam <= mu of ``weights``."""
    ws = sorted({tuple(w) for w in weights}, key=_order_key)
    rows = []
    for i, lam in enumerate(ws):
        for mu in ws[i:]:
            for kappa, c in structure_constants(h, lam, mu).items():
                rows.append((lam, mu, kappa, c))
    return rows


def modp_structure(h: HeckeAlgebraHandle, lam: Sequence[int], mu: Sequence[int]) -> Dict[Weight, int]:
    """Structure constants at q = p^k reduced mod p (nonzero entries only).

    The product is formed with integer coefficients at the numeric q, not
    by specialising the symbolic table.
    """
    if h.mode.symbolic:
        raise NotPrimePower("modp_structure needs a numeric prime-power q")
    p = prime_power_base(h.mode.q)
    prod = hecke_multiply(h, h.basis(lam), h.basis(mu))
    out = {}
    for k, v in prod.coords.items():
        if isinstance(v, Fraction):
            raise Mismatch(f"non-integral structure constant {v} at {k}")
        r = int(v) % p
        if r:
            out[k] = r
    return out


def monoid_law(lam: Sequence[int], mu: Sequence[int]) -> Dict[Weight, int]:
    return {vadd(lam, mu): 1}


# ---------------------------------------------------------------------------
# weight-V algebras


def weight_hecke(h: HeckeAlgebraHandle, weight: Sequence) -> HeckeAlgebraHandle:
    """Handle for H_G(V), V of highest weight ``weight`` (a dominant weight of G).

    Numeric handles must have q = p prime (the uniformizer is p itself).
    """
    if not h.is_rho:
        raise ValidationError("weight_hecke starts from the rho_ad handle")
    if not h.mode.symbolic and not is_prime(h.mode.q):
        raise NotPrimePower(f"weight-V algebras need q = p prime, got {h.mode.q}")
    s = shift_from_weight(h.datum, weight)
    return HeckeAlgebraHandle(h.datum, h.shift + s, h.mode)


@dataclass
class ScalingReport:
    lam: Weight
    mu: Weight
    rows: List[Tuple[Weight, object, object, int]] = field(default_factory=list)
    ok: bool = True
    problems: List[str] = field(default_factory=list)

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return f"scaling {self.lam} x {self.mu}: {status} ({len(self.rows)} kappa)" + (
            "" if self.ok else "; " + "; ".join(self.problems)
        )


def scaling_compare(
    h_rho: HeckeAlgebraHandle,
    h_shifted: HeckeAlgebraHandle,
    lam: Sequence[int],
    mu: Sequence[int],
    labels: str = "antidominant",
    raise_on_mismatch: bool = True,
) -> ScalingReport:
    """Compare the structure constants of m_lam * m_mu under two shifts.

    With s the shift difference, rescaling e^v by q^<s, v> intertwines the
    two m-bases, so in antidominant labels c'_kappa = q^<s, kappa - lam - mu> c_kappa;
    kappa - lam - mu is a nonnegative root combination, so no negative powers
    appear.  With ``labels="dominant"`` every weight is replaced by its
    dominant conjugate and the exponent is read as <s, lam+ + mu+ - kappa+>,
    which agrees whenever -w0 fixes s on the root lattice.  Both sides are
    also checked to lie in Z[q].
    """
    if h_rho.datum is not h_shifted.datum:
        raise ValidationError("handles must share a datum")
    if not (h_rho.mode.symbolic and h_shifted.mode.symbolic):
        raise ValidationError("scaling_compare runs in symbolic mode")
    if labels not in ("antidominant", "dominant"):
        raise ValidationError(f"unknown label convention {labels!r}")
    datum = h_rho.datum
    lam, mu = tuple(lam), tuple(mu)
    s = h_shifted.shift - h_rho.shift
    base = structure_constants(h_rho, lam, mu)
    shifted = structure_constants(h_shifted, lam, mu)
    report = ScalingReport(lam, mu)
    for kappa in sorted(set(base) | set(shifted), key=_order_key):
        c = base.get(kappa, LaurentPoly())
        c2 = shifted.get(kappa, LaurentPoly())
        if labels == "antidominant":
            e = s.pair_int(vsub(kappa, vadd(lam, mu)))
        else:
            top = vadd(dominant_rep(datum, lam), dominant_rep(datum, mu))
            e = s.pair_int(vsub(top, dominant_rep(datum, kappa)))
        report.rows.append((kappa, c, c2, e))
        if c.shift(e) != c2:
            report.ok = False
            report.problems.append(f"kappa={kappa}: {c2} != q^{e}*({c})")
        if not (c.is_polynomial() and c2.is_polynomial()):
            report.ok = False
            report.problems.append(f"kappa={kappa}: coefficient outside Z[q]")
    if raise_on_mismatch and not report.ok:
        raise Mismatch(str(report))
    return report


# ---------------------------------------------------------------------------
# double-coset basis (split case)


def _require_split_rho(h: HeckeAlgebraHandle):
    if not h.datum.split:
        raise SigmaNontrivial(f"{h.datum.name}: double-coset coordinates need sigma = id")
    if not h.is_rho:
        raise ValidationError("double-coset basis is defined for the rho_ad handle")


@lru_cache(maxsize=None)
def _dc(datum: RootDatum, mu: Weight) -> Tuple[Tuple[Weight, LaurentPoly], ...]:
    coords: Dict[Weight, LaurentPoly] = dict(character_image(datum, mu))
    for lower in lower_dominant_weights(datum, mu)[1:]:
        a = ic_coefficient(datum, mu, lower)
        if not a:
            continue
        for k, v in _dc(datum, lower):
            coords[k] = coords.get(k, LaurentPoly()) - a * v
    clean = {k: v for k, v in coords.items() if v}
    top = antidominant_rep(datum, mu)
    if clean.get(top) != LaurentPoly(1):
        raise Mismatch(f"double-coset element of {mu} has leading coefficient {clean.get(top)}")
    return tuple(sorted(clean.items(), key=lambda kv: _order_key(kv[0])))


def double_coset_basis(h: HeckeAlgebraHandle, mu: Sequence[int]) -> HeckeElement:
    """m-coordinates of the constant term of 1_{K mu K}, mu dominant."""
    _require_split_rho(h)
    mu = tuple(mu)
    if not h.datum.is_dominant(mu):
        mu = dominant_rep(h.datum, mu)
    return HeckeElement(h, dict(_dc(h.datum, mu)))


def ic_metadata(h: HeckeAlgebraHandle, mu: Sequence[int]) -> Dict[str, object]:
    """The sign the normalisation drops, for reporting alongside outputs."""
    return {"mu": tuple(mu), "sign": ic_sign(h.datum, mu)}


def to_double_coset_coords(h: HeckeAlgebraHandle, x: HeckeElement) -> Dict[Weight, object]:
    """Rewrite m-coordinates in the basis 1_{K mu K} (dominant labels)."""
    _require_split_rho(h)
    datum = h.datum
    rho = datum.rho_ad
    remaining = dict(x.coords)
    out: Dict[Weight, object] = {}
    while remaining:
        lam = max(remaining, key=lambda k: (rho.pair(dominant_rep(datum, k)), k))
        c = remaining[lam]
        mu = dominant_rep(datum, lam)
        out[mu] = c
        for k, v in double_coset_basis(h, mu).coords.items():
            nv = remaining.get(k, h.mode.zero) - c * v
            if nv:
                remaining[k] = nv
            else:
                remaining.pop(k, None)
    return dict(sorted(out.items(), key=lambda kv: (-rho.pair(kv[0]), kv[0])))


def dc_structure_constants(h: HeckeAlgebraHandle, mu: Sequence[int], nu: Sequence[int]) -> Dict[Weight, object]:
    """1_{K mu K} * 1_{K nu K} in the double-coset basis."""
    prod = hecke_multiply(h, double_coset_basis(h, mu), double_coset_basis(h, nu))
    return to_double_coset_coords(h, prod)
