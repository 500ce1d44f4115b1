"""Elementary divisors over F_q[[t]]: the invariant of the double coset K g K."""
from __future__ import annotations

import itertools
import random
from typing import Callable, List, Optional, Tuple

from ..errors import Mismatch, PrecisionExhausted, Singular
from .field import GF
from .series import OracleMatrix, TruncSeries

PRECISION_CAP = 256


def smith_valuations(m: OracleMatrix) -> Tuple[int, ...]:
    """Valuations of the elementary divisors of m, largest first.

    Pivots on an entry of minimal valuation, clears its column below by row
    operations with coefficients in O, and recurses on the lower block.
    Clearing the pivot row is unnecessary since those column operations do
    not touch the lower block.
    """
    n = m.n
    det_val = None
    if all(x.exact for row in m.rows for x in row):
        det = _det(m.rows, m.F)
        if det.is_exact_zero():
            raise Singular("matrix is singular")
        det_val = det.valuation()
    rows: List[List[TruncSeries]] = [list(r) for r in m.rows]
    found = []
    for k in range(n):
        best: Optional[Tuple[int, int, int]] = None
        unknown_floor: Optional[int] = None
        for i in range(k, n):
            for j in range(k, n):
                x = rows[i][j]
                if x.is_exact_zero():
                    continue
                if x.known_zero():
                    unknown_floor = x.prec if unknown_floor is None else min(unknown_floor, x.prec)
                    continue
                v = x.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None and unknown_floor is None:
            raise Singular("matrix is singular")
        if best is None or (unknown_floor is not None and unknown_floor <= best[0]):
            raise PrecisionExhausted(f"pivot {k}: cannot separate a valuation from zero at precision {m.precision}")
        v, i, j = best
        rows[k], rows[i] = rows[i], rows[k]
        for r in rows:
            r[k], r[j] = r[j], r[k]
        inv = rows[k][k].inverse(m.precision)
        for r in range(k + 1, n):
            if rows[r][k].is_exact_zero():
                continue
            factor = rows[r][k] * inv
            for c in range(k + 1, n):
                rows[r][c] = rows[r][c] - factor * rows[k][c]
            rows[r][k] = TruncSeries(m.F)
        found.append(v)
    if det_val is not None and sum(found) != det_val:
        raise Mismatch(f"divisors {found} do not add up to the determinant valuation {det_val}")
    return tuple(sorted(found, reverse=True))


def smith_with_retry(build: Callable[[int], OracleMatrix], precision: int, cap: int = PRECISION_CAP) -> Tuple[int, ...]:
    """Run smith_valuations, doubling the precision on PrecisionExhausted."""
    while True:
        try:
            return smith_valuations(build(precision))
        except PrecisionExhausted:
            if precision >= cap:
                raise
            precision = min(2 * precision, cap)


# ---------------------------------------------------------------------------
# independent route: d_k = min valuation of the k x k minors


def _det(rows: List[List[TruncSeries]], F: GF) -> TruncSeries:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = TruncSeries(F)
    for j in range(n):
        if rows[0][j].is_exact_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor, F)
        total = total - term if j % 2 else total + term
    return total


def smith_by_minors(m: OracleMatrix) -> Tuple[int, ...]:
    """Elementary divisors from gcds of minors; exact entries only."""
    n = m.n
    F = m.F
    if any(not x.exact for row in m.rows for x in row):
        raise ValueError("minor computation needs exact entries")
    d = [0]
    for k in range(1, n + 1):
        vals = []
        for rs in itertools.combinations(range(n), k):
            for cs in itertools.combinations(range(n), k):
                det = _det([[m.rows[r][c] for c in cs] for r in rs], F)
                if not det.is_exact_zero():
                    vals.append(det.valuation())
        if not vals:
            raise Singular("matrix is singular")
        d.append(min(vals))
    return tuple(sorted((d[k] - d[k - 1] for k in range(1, n + 1)), reverse=True))


def random_unimodular(F: GF, n: int, rng: random.Random, steps: int = 6, degree: int = 2) -> OracleMatrix:
    """A random element of GL_n(F_q[t]), hence of GL_n(O)."""
    rows = [[TruncSeries.monomial(F, 0) if i == j else TruncSeries(F) for j in range(n)] for i in range(n)]
    current = OracleMatrix(rows)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        e = [[TruncSeries.monomial(F, 0) if a == b else TruncSeries(F) for b in range(n)] for a in range(n)]
        if i != j:
            e[i][j] = TruncSeries(F, {d: rng.randrange(F.q) for d in range(degree + 1)})
        unit = rng.choice(list(F.units()))
        e[i][i] = TruncSeries(F, {0: unit})
        current = current * OracleMatrix(e)
    return current
