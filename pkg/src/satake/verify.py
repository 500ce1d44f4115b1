"""Acceptance suite: eight checks shared by ``satake verify`` and the tests.

Each check returns a :class:`CriterionResult`; ``run_all`` restricts every
check to the data it is tagged with, so ``verify --datum GL2`` runs exactly
the checks that involve GL2.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .charalg import LatticeAlgebraElement, expand_in_m_basis, from_m_coordinates, m_element, twisted_action
from .errors import SatakeError
from .hecke import (
    double_coset_basis,
    dc_structure_constants,
    hecke_algebra,
    modp_structure,
    scaling_compare,
    structure_constants,
    weight_hecke,
)
from .kostka import character_image, freudenthal_multiplicity, ic_coefficient, kostka_foulkes, lower_dominant_weights
from .oracle import convolution_table, satake_vector
from .qpoly import LaurentPoly, QMode, is_prime
from .rootdata import (
    RootDatum,
    antidominant_fixed_weights,
    dominant_weights_up_to_height,
    get_datum,
    vadd,
    vsub,
)
from .weyl import antidominant_rep, folded_generators

CLOSURE_DATA = ("GL2", "GL3", "PGL2", "PGL3", "SL2", "Sp4", "G2", "U3", "GL2xGL2")
ORACLE_DATA = ("GL2", "GL3")
GL3_ORACLE_MU = ((1, 0, 0), (1, 1, 0), (2, 0, 0), (2, 1, 0))
SCALING_SAMPLES: Dict[str, Tuple[Tuple[int, ...], ...]] = {
    "GL2": ((1, 0), (2, 0), (2, -1)),
    "PGL2": ((1,), (2,), (3,)),
}
KOSTKA_DATA = ("PGL2", "PGL3", "Sp4", "G2")
TWISTED_DATA = ("GL2", "GL3", "GL4", "SL2", "SL3", "SL4", "PGL2", "PGL3", "Sp4", "SO5", "G2", "U2", "U3", "U4", "GL2xGL2")
DEFAULT_QS = (2, 3)
DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        self.failures.append(message)

    def line(self) -> str:
        if self.skipped:
            return f"criterion {self.number} SKIP {self.title}: not tagged for this datum"
        status = "PASS" if self.ok else "FAIL"
        text = f"criterion {self.number} {status} {self.title}: {self.checks} checks, {len(self.failures)} failures"
        return text

    def report(self, limit: int = 5) -> str:
        lines = [self.line()]
        lines.extend(f"  counterexample: {f}" for f in self.failures[:limit])
        if len(self.failures) > limit:
            lines.append(f"  ... {len(self.failures) - limit} more")
        return "\n".join(lines)


def _timed(fn: Callable[..., CriterionResult]) -> Callable[..., CriterionResult]:
    def wrapper(*args, **kwargs) -> CriterionResult:
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _pick(default: Sequence[str], names: Optional[Iterable[str]]) -> List[str]:
    if names is None:
        return list(default)
    wanted = set(names)
    return [n for n in default if n in wanted]


def _nonneg_poly(c: LaurentPoly) -> bool:
    return c.is_polynomial() and c.has_nonnegative_coefficients()


# ---------------------------------------------------------------------------
# 1 and 5


def closure_tables(datum: RootDatum, max_height: int = 4) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Dict]:
    h = hecke_algebra(datum)
    weights = antidominant_fixed_weights(datum, max_height)
    tables = {}
    for i, lam in enumerate(weights):
        for mu in weights[i:]:
            tables[(lam, mu)] = structure_constants(h, lam, mu)
    return tables


@_timed
def criterion_closure(names: Optional[Iterable[str]] = None, max_height: int = 4) -> CriterionResult:
    """m-basis closure with coefficients in Z_{>=0}[q]."""
    res = CriterionResult(1, "m-basis closure")
    for name in _pick(CLOSURE_DATA, names):
        datum = get_datum(name)
        try:
            tables = closure_tables(datum, max_height)
        except SatakeError as exc:
            res.fail(f"{name}: {type(exc).__name__}: {exc}")
            continue
        for (lam, mu), table in tables.items():
            res.checks += 1
            for kappa, c in table.items():
                if not _nonneg_poly(c):
                    res.fail(f"{name}: m{lam}*m{mu} has coefficient {c} at {kappa}")
    return res


@_timed
def criterion_modp(names: Optional[Iterable[str]] = None, primes: Sequence[int] = DEFAULT_QS, max_height: int = 4) -> CriterionResult:
    """q = 0 recovers the monoid law; numeric q = p reduces to it mod p."""
    res = CriterionResult(5, "mod-p degeneration")
    for name in _pick(CLOSURE_DATA, names):
        datum = get_datum(name)
        for (lam, mu), table in closure_tables(datum, max_height).items():
            res.checks += 1
            expected = {vadd(lam, mu): 1}
            at_zero = {k: c.evaluate(0) for k, c in table.items() if c.evaluate(0)}
            if at_zero != expected:
                res.fail(f"{name}: m{lam}*m{mu} at q=0 is {at_zero}")
        for p in primes:
            h = hecke_algebra(datum, q=p)
            weights = antidominant_fixed_weights(datum, max_height)
            for i, lam in enumerate(weights):
                for mu in weights[i:]:
                    res.checks += 1
                    got = modp_structure(h, lam, mu)
                    if got != {vadd(lam, mu): 1}:
                        res.fail(f"{name}: m{lam}*m{mu} mod {p} is {got}")
    return res


# ---------------------------------------------------------------------------
# 2 and 3: the GL_n oracle


def gl2_oracle_coweights(spread: int = 3) -> List[Tuple[int, int]]:
    return [(b + d, b) for b in (-1, 0) for d in range(spread + 1)]


def _model_ct(datum: RootDatum, mu, q: int) -> LatticeAlgebraElement:
    h = hecke_algebra(datum)
    return from_m_coordinates(datum, datum.rho_ad, double_coset_basis(h, mu).coords).specialize(q)


@_timed
def criterion_satake_oracle(names: Optional[Iterable[str]] = None, qs: Sequence[int] = DEFAULT_QS, spread: int = 3) -> CriterionResult:
    """double_coset_basis agrees with brute-force unipotent counting."""
    res = CriterionResult(2, "oracle equivalence (Satake transform)")
    cases: List[Tuple[str, Tuple[int, ...]]] = []
    chosen = _pick(ORACLE_DATA, names)
    if "GL2" in chosen:
        cases += [("GL2", mu) for mu in gl2_oracle_coweights(spread)]
    if "GL3" in chosen:
        cases += [("GL3", mu) for mu in GL3_ORACLE_MU]
    for name, mu in cases:
        datum = get_datum(name)
        for q in qs:
            res.checks += 1
            model = _model_ct(datum, mu, q)
            oracle = satake_vector(datum.rank, q, mu)
            if model != oracle:
                res.fail(f"{name} q={q} mu={mu}: model {model} vs oracle {oracle}")
    if "GL2" in chosen:
        for q in qs:
            res.checks += 2
            m01 = LatticeAlgebraElement({(0, 1): 1, (1, 0): q}, QMode(q))
            if satake_vector(2, q, (1, 0)) != m01:
                res.fail(f"q={q}: CT(1_K(1,0)K) != e^(0,1) + q e^(1,0)")
            m20 = LatticeAlgebraElement({(0, 2): 1, (2, 0): q * q, (1, 1): q - 1}, QMode(q))
            if satake_vector(2, q, (2, 0)) != m20:
                res.fail(f"q={q}: CT(1_K(2,0)K) != m(0,2) + (q-1) e^(1,1)")
    return res


@_timed
def criterion_convolution(names: Optional[Iterable[str]] = None, qs: Sequence[int] = DEFAULT_QS, pairs: int = 10, seed: int = DEFAULT_SEED) -> CriterionResult:
    """Convolution counts match dc structure constants; CT is multiplicative."""
    res = CriterionResult(3, "oracle equivalence (convolution)")
    if "GL2" not in _pick(ORACLE_DATA, names):
        res.skipped = True
        return res
    datum = get_datum("GL2")
    h = hecke_algebra(datum)
    for q in qs:
        res.checks += 1
        table = convolution_table(q, (1, 0), (1, 0))
        if table != {(2, 0): 1, (1, 1): q + 1}:
            res.fail(f"q={q}: 1_(1,0)*1_(1,0) = {table}")
    rng = random.Random(seed)
    pool = [(b + d, b) for b in (-1, 0, 1) for d in range(3)]
    for _ in range(pairs):
        mu, nu = rng.choice(pool), rng.choice(pool)
        q = rng.choice(list(qs))
        res.checks += 1
        table = convolution_table(q, mu, nu)
        model = {k: v.evaluate(q) for k, v in dc_structure_constants(h, mu, nu).items()}
        if table != model:
            res.fail(f"q={q} {mu}*{nu}: oracle {table} vs model {model}")
        lhs = satake_vector(2, q, mu) * satake_vector(2, q, nu)
        rhs = LatticeAlgebraElement({}, QMode(q))
        for kappa, c in table.items():
            rhs = rhs + satake_vector(2, q, kappa, spread=6).scale(c)
        if lhs != rhs:
            res.fail(f"q={q} {mu}*{nu}: CT(a*b) != CT(a)CT(b)")
    return res


# ---------------------------------------------------------------------------
# 4


def _solve_unitriangular(rows: Dict[int, Dict[int, LaurentPoly]]) -> Dict[int, Dict[int, LaurentPoly]]:
    """Invert a lower unitriangular matrix indexed 0..n (row k = tr^k)."""
    inverse: Dict[int, Dict[int, LaurentPoly]] = {}
    for k in sorted(rows):
        # m_k = tr^k - sum_{j<k} a_kj m_j
        acc: Dict[int, LaurentPoly] = {k: LaurentPoly(1)}
        for j, a in rows[k].items():
            if j == k:
                continue
            for i, b in inverse[j].items():
                acc[i] = acc.get(i, LaurentPoly()) - a * b
        inverse[k] = {i: v for i, v in acc.items() if v}
    return inverse


@_timed
def criterion_pgl2_trace(names: Optional[Iterable[str]] = None, top: int = 6) -> CriterionResult:
    """The 2-dimensional character freely generates the PGL2 Hecke algebra."""
    res = CriterionResult(4, "PGL2 Hecke algebra = Z[q][tr]")
    if "PGL2" not in _pick(("PGL2",), names):
        res.skipped = True
        return res
    datum = get_datum("PGL2")
    shift = datum.rho_ad
    tr_coords = character_image(datum, (1,))
    tr = from_m_coordinates(datum, shift, tr_coords)
    res.checks += 1
    if tr_coords != {(-1,): LaurentPoly(1)}:
        res.fail(f"character image of V is {tr_coords}, not the single generator m(-1)")
    rows: Dict[int, Dict[int, LaurentPoly]] = {}
    power = from_m_coordinates(datum, shift, {(0,): 1})
    for k in range(top + 1):
        res.checks += 1
        coords = expand_in_m_basis(datum, shift, power)
        row = {-lam[0]: c for lam, c in coords.items()}
        if any(j > k for j in row) or row.get(k) != LaurentPoly(1):
            res.fail(f"tr^{k} is not unitriangular: {coords}")
        if any(not c.is_polynomial() for c in row.values()):
            res.fail(f"tr^{k} has non-integral coordinates {coords}")
        rows[k] = row
        power = power * tr
    inverse = _solve_unitriangular(rows)
    for j in range(top + 1):
        res.checks += 1
        rebuilt = LatticeAlgebraElement({}, power.mode)
        for k, c in inverse[j].items():
            rebuilt = rebuilt + (tr ** k).scale(c)
        if rebuilt != m_element(datum, shift, (-j,)):
            res.fail(f"m(-{j}) is not recovered from powers of tr")
        if any(not c.is_polynomial() for c in inverse[j].values()):
            res.fail(f"m(-{j}) needs non-polynomial coefficients")
    return res


# ---------------------------------------------------------------------------
# 6


@_timed
def criterion_scaling(names: Optional[Iterable[str]] = None, max_height: int = 3) -> CriterionResult:
    """Weight-V structure constants are q-power rescalings of the rho_ad ones."""
    res = CriterionResult(6, "weight-V scaling")
    for name in _pick(tuple(SCALING_SAMPLES), names):
        datum = get_datum(name)
        h = hecke_algebra(datum)
        weights = antidominant_fixed_weights(datum, max_height)
        for lam_g in SCALING_SAMPLES[name]:
            hv = weight_hecke(h, lam_g)
            for i, lam in enumerate(weights):
                for mu in weights[i:]:
                    for labels in ("dominant", "antidominant"):
                        res.checks += 1
                        report = scaling_compare(h, hv, lam, mu, labels=labels, raise_on_mismatch=False)
                        if not report.ok:
                            res.fail(f"{name} V={lam_g} ({labels}): {report}")
    return res


# ---------------------------------------------------------------------------
# 7


@_timed
def criterion_kostka(names: Optional[Iterable[str]] = None, max_height: int = 6) -> CriterionResult:
    """Kostka polynomials against weight multiplicities, plus the degree bound."""
    res = CriterionResult(7, "Kostka consistency")
    for name in _pick(KOSTKA_DATA, names):
        datum = get_datum(name)
        rho = datum.rho_ad
        for mu in dominant_weights_up_to_height(datum, max_height):
            for lam in lower_dominant_weights(datum, mu):
                res.checks += 1
                k = kostka_foulkes(datum, mu, lam)
                mult = freudenthal_multiplicity(datum, mu, lam)
                if k.evaluate(1) != mult:
                    res.fail(f"{name}: K_{mu},{lam}(1) = {k.evaluate(1)} but multiplicity {mult}")
                if lam == mu and k != LaurentPoly(1):
                    res.fail(f"{name}: K_{mu},{mu} = {k}")
                bound = rho.pair_int(vsub(antidominant_rep(datum, lam), antidominant_rep(datum, mu)))
                if k and k.degree() > bound:
                    res.fail(f"{name}: deg K_{mu},{lam} = {k.degree()} > {bound}")
                if not k.has_nonnegative_coefficients():
                    res.fail(f"{name}: K_{mu},{lam} = {k} has a negative coefficient")
                try:
                    ic_coefficient(datum, mu, lam)
                except SatakeError as exc:
                    res.fail(f"{name}: {exc}")
            for c in character_image(datum, mu).values():
                if not c.is_polynomial():
                    res.fail(f"{name}: character image of {mu} leaves Z[q]")
    return res


# ---------------------------------------------------------------------------
# 8


@_timed
def criterion_twisted(names: Optional[Iterable[str]] = None, max_height: int = 4, q: int = 3) -> CriterionResult:
    """Every m-element is invariant under the twisted folded action."""
    res = CriterionResult(8, "twisted-action invariance")
    for name in _pick(TWISTED_DATA, names):
        datum = get_datum(name)
        shift = datum.rho_ad
        gens = folded_generators(datum)
        for lam in antidominant_fixed_weights(datum, max_height):
            for mode in (QMode(), QMode(q)):
                x = m_element(datum, shift, lam, mode)
                for g in gens:
                    res.checks += 1
                    y = twisted_action(datum, shift, [g], x)
                    if y != x:
                        res.fail(f"{name}: m{lam} moved by folded generator {g.word} ({'symbolic' if mode.symbolic else f'q={q}'})")
    return res


CRITERIA = {
    1: criterion_closure,
    2: criterion_satake_oracle,
    3: criterion_convolution,
    4: criterion_pgl2_trace,
    5: criterion_modp,
    6: criterion_scaling,
    7: criterion_kostka,
    8: criterion_twisted,
}

TAGS = {
    1: CLOSURE_DATA,
    2: ORACLE_DATA,
    3: ("GL2",),
    4: ("PGL2",),
    5: CLOSURE_DATA,
    6: tuple(SCALING_SAMPLES),
    7: KOSTKA_DATA,
    8: TWISTED_DATA,
}


def criteria_for(datum_name: Optional[str]) -> List[int]:
    if datum_name is None:
        return sorted(CRITERIA)
    return [n for n in sorted(CRITERIA) if datum_name in TAGS[n]]


def run_all(datum_name: Optional[str] = None, q: Optional[int] = None, seed: int = DEFAULT_SEED) -> List[CriterionResult]:
    """Run every criterion tagged for ``datum_name`` (all of them if None).

    A numeric ``q`` narrows the oracle and mod-p checks to that value.
    """
    names = None if datum_name is None else [datum_name]
    qs = DEFAULT_QS if q is None else (q,)
    results = []
    for n in criteria_for(datum_name):
        fn = CRITERIA[n]
        if n in (2,):
            results.append(fn(names, qs=qs))
        elif n == 3:
            results.append(fn(names, qs=qs, seed=seed))
        elif n == 5:
            results.append(fn(names, primes=tuple(p for p in qs if is_prime(p))))
        else:
            results.append(fn(names))
    return results
