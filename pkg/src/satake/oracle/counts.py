"""Brute-force counts in GL_n(F_q((t))): Satake transforms and convolutions.

Nothing here consults the root-datum engine; dominance for GL_n is checked
by partial sums so that the oracle stays independent of the model it tests.
"""
from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Sequence, Tuple

from ..charalg import LatticeAlgebraElement
from ..errors import EnvelopeExceeded, NotDominant, SupportViolation, ValidationError
from ..qpoly import QMode, prime_power_base
from .field import GF, field
from .series import OracleMatrix
from .smith import smith_with_retry

MAX_N = 3
MAX_Q = 5
DEFAULT_SPREAD = 4

Coweight = Tuple[int, ...]


def is_dominant_gl(mu: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(mu, mu[1:]))


def dominates_gl(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """lam+ <= mu in the dominance order of GL_n."""
    if sum(mu) != sum(lam):
        return False
    lp = sorted(lam, reverse=True)
    return all(sum(lp[:k]) <= sum(mu[:k]) for k in range(1, len(mu)))


def _check_envelope(n: int, q: int, spread: int, limit: int):
    if not 1 <= n <= MAX_N:
        raise EnvelopeExceeded(f"n = {n} outside 1..{MAX_N}")
    prime_power_base(q)
    if q > MAX_Q:
        raise EnvelopeExceeded(f"q = {q} exceeds {MAX_Q}")
    if spread > limit:
        raise EnvelopeExceeded(f"coweight spread {spread} exceeds {limit}")


def _check_mu(n: int, mu: Sequence[int]) -> Coweight:
    mu = tuple(int(x) for x in mu)
    if len(mu) != n:
        raise ValidationError(f"coweight {mu} has length {len(mu)}, expected {n}")
    if not is_dominant_gl(mu):
        raise NotDominant(f"{mu} is not dominant")
    return mu


def _polys(F: GF, exps: Sequence[int]) -> Iterator[Dict[int, int]]:
    """All F_q-polynomials supported on the given exponents."""
    for cs in itertools.product(F.elements(), repeat=len(exps)):
        yield {e: c for e, c in zip(exps, cs) if c}


def initial_precision(mu: Sequence[int], lam: Sequence[int]) -> int:
    return abs(sum(mu)) + abs(sum(lam)) + 4


def unipotent_box(mu: Sequence[int], lam: Sequence[int]) -> Dict[Tuple[int, int], int]:
    """k_ij such that x_ij in t^-k_ij O / O covers every coset that can meet K mu K.

    Entry (i, j) of lam(t) u is t^lam_i x_ij and every entry of an element of
    K mu K has valuation >= min(mu).
    """
    low = min(mu)
    n = len(mu)
    return {(i, j): max(0, lam[i] - low) for i in range(n) for j in range(i + 1, n)}


def satake_count(n: int, q: int, mu: Sequence[int], lam: Sequence[int], spread: int = DEFAULT_SPREAD) -> int:
    """#{u in U(F)/U(O) : lam(t) u in K mu(t) K}."""
    mu = _check_mu(n, mu)
    lam = tuple(int(x) for x in lam)
    if len(lam) != n:
        raise ValidationError(f"coweight {lam} has length {len(lam)}, expected {n}")
    _check_envelope(n, q, mu[0] - mu[-1], spread)
    if max(lam) - mu[-1] > (n - 1) * spread:
        raise EnvelopeExceeded(f"{lam} is too far from {mu} for enumeration")
    F = field(q)
    box = unipotent_box(mu, lam)
    slots = sorted(box)
    choices = [list(_polys(F, range(-box[s], 0))) for s in slots]
    prec0 = initial_precision(mu, lam)
    count = 0
    for xs in itertools.product(*choices):
        x = dict(zip(slots, xs))
        entries = []
        for i in range(n):
            row = []
            for j in range(n):
                if j < i:
                    row.append({})
                elif j == i:
                    row.append({lam[i]: 1})
                else:
                    row.append({e + lam[i]: c for e, c in x[(i, j)].items()})
            entries.append(row)
        divisors = smith_with_retry(lambda p, entries=entries: OracleMatrix.from_terms(F, entries, p), prec0)
        if divisors == mu:
            count += 1
    return count


def candidate_coweights(n: int, mu: Sequence[int]) -> List[Coweight]:
    """Every lam with min(mu) <= lam_i and sum(lam) = sum(mu)."""
    low, total = min(mu), sum(mu)
    high = total - (n - 1) * low
    return [lam for lam in itertools.product(range(low, high + 1), repeat=n) if sum(lam) == total]


def satake_vector(n: int, q: int, mu: Sequence[int], spread: int = DEFAULT_SPREAD) -> LatticeAlgebraElement:
    """sum over lam of satake_count(mu, lam) e^lam, with the support bound enforced.

    Coweights with some lam_i < min(mu) cannot occur (the diagonal entry
    t^lam_i would be too small); all others with the right determinant are
    enumerated and any nonzero count with lam+ not below mu is an error.
    """
    mu = _check_mu(n, mu)
    terms = {}
    for lam in candidate_coweights(n, mu):
        c = satake_count(n, q, mu, lam, spread)
        if not c:
            continue
        if not dominates_gl(mu, lam):
            raise SupportViolation(f"count {c} at {lam}, outside the dominance cone of {mu}")
        terms[lam] = c
    return LatticeAlgebraElement(terms, QMode(q))


# ---------------------------------------------------------------------------
# convolution for GL_2


def hermite_cosets(q: int, mu: Sequence[int]) -> List[Tuple[int, int, Dict[int, int]]]:
    """Representatives [[t^a, c], [0, t^b]] of the cosets hK inside K mu(t) K.

    c runs over t^min(mu) O / t^a O; candidates are filtered by their
    elementary divisors.
    """
    mu = _check_mu(2, mu)
    F = field(q)
    low = mu[-1]
    out = []
    for a in range(low, mu[0] + 1):
        b = sum(mu) - a
        if b < low:
            continue
        for c in _polys(F, range(low, a)):
            m = [[{a: 1}, c], [{}, {b: 1}]]
            if smith_with_retry(lambda p, m=m: OracleMatrix.from_terms(F, m, p), initial_precision(mu, mu)) == mu:
                out.append((a, b, c))
    return out


def convolve_count(n: int, q: int, mu: Sequence[int], nu: Sequence[int], kappa: Sequence[int], spread: int = DEFAULT_SPREAD) -> int:
    """Coefficient of 1_{K kappa K} in 1_{K mu K} * 1_{K nu K}.

    Counts cosets hK in K mu K with h^-1 kappa(t) in K nu K.
    """
    if n != 2:
        raise EnvelopeExceeded("convolution is enumerated for GL_2 only")
    mu, nu, kappa = _check_mu(2, mu), _check_mu(2, nu), _check_mu(2, kappa)
    for w in (mu, nu, kappa):
        _check_envelope(n, q, w[0] - w[-1], spread)
    F = field(q)
    count = 0
    for a, b, c in hermite_cosets(q, mu):
        # h^-1 = [[t^-a, -c t^(-a-b)], [0, t^-b]]
        upper = {e - a - b + kappa[1]: F.neg(x) for e, x in c.items()}
        m = [[{kappa[0] - a: 1}, upper], [{}, {kappa[1] - b: 1}]]
        if smith_with_retry(lambda p, m=m: OracleMatrix.from_terms(F, m, p), initial_precision(nu, kappa)) == nu:
            count += 1
    return count


def convolution_table(q: int, mu: Sequence[int], nu: Sequence[int], spread: int = DEFAULT_SPREAD) -> Dict[Coweight, int]:
    """All nonzero structure constants of 1_{K mu K} * 1_{K nu K} in GL_2."""
    mu, nu = _check_mu(2, mu), _check_mu(2, nu)
    total = (mu[0] + nu[0], mu[1] + nu[1])
    out = {}
    for top in range(total[0], (sum(total) + 1) // 2 - 1, -1):
        kappa = (top, sum(total) - top)
        if not is_dominant_gl(kappa):
            continue
        c = convolve_count(2, q, mu, nu, kappa, spread=max(spread, total[0] - total[1]))
        if c:
            out[kappa] = c
    return out
