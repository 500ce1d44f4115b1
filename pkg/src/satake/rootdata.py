"""Based root data with a pinned automorphism.

Everything lives on the dual side: the stored lattice ``X`` is the character
lattice of the dual torus, which is also the cocharacter lattice of the
p-adic group.  Weights of ``G`` (covectors on ``X``) enter only through
:func:`shift_from_weight`.

Vectors are plain tuples of ints; covectors that may be fractional (the
``rho`` shift) are :class:`ShiftCovector` with ``Fraction`` entries.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    NotDominant,
    NotFiniteOrder,
    NotFiniteType,
    PinningViolated,
    UnknownName,
    ValidationError,
)

Weight = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

MAX_SIGMA_ORDER = 64


def pair(covector: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(covector, v))


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Weight:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def vadd(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: int, a: Sequence[int]) -> Weight:
    return tuple(c * x for x in a)


def height(weight: Sequence[int]) -> int:
    """l1 norm in datum coordinates; the size bound used by every sweep."""
    return sum(abs(x) for x in weight)


@dataclass(frozen=True)
class ShiftCovector:
    """Rational covector on X, integral on the root lattice."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(x) for x in self.values))

    def pair(self, v: Sequence[int]) -> Fraction:
        return pair(self.values, v)

    def pair_int(self, v: Sequence[int]) -> int:
        """Pairing that must be integral (v in the root lattice)."""
        x = self.pair(v)
        if x.denominator != 1:
            raise ValidationError(f"shift pairing with {tuple(v)} is not integral: {x}")
        return int(x)

    def __add__(self, other: "ShiftCovector") -> "ShiftCovector":
        return ShiftCovector(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ShiftCovector") -> "ShiftCovector":
        return ShiftCovector(tuple(a - b for a, b in zip(self.values, other.values)))

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.values) + ")"


@dataclass(frozen=True)
class BasedRootDatum:
    """Raw datum as read from a file; call :func:`validate` before use."""

    name: str
    rank: int
    simple_roots: Tuple[Weight, ...]
    simple_coroots: Tuple[Weight, ...]
    sigma_matrix: Optional[Matrix] = None
    sigma_permutation: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_dict(cls, d: dict) -> "BasedRootDatum":
        try:
            rank = int(d["rank"])
            roots = tuple(tuple(int(x) for x in r) for r in d["simple_roots"])
            coroots = tuple(tuple(int(x) for x in r) for r in d["simple_coroots"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed root datum: {exc}") from exc
        sigma = d.get("sigma_matrix")
        if sigma is not None:
            flat = list(itertools.chain.from_iterable(sigma)) if sigma and isinstance(sigma[0], list) else list(sigma)
            if len(flat) != rank * rank:
                raise ValidationError("sigma_matrix must have rank*rank entries")
            sigma = tuple(tuple(int(x) for x in flat[i * rank:(i + 1) * rank]) for i in range(rank))
        perm = d.get("sigma_permutation")
        if perm is not None:
            perm = tuple(int(x) for x in perm)
        return cls(str(d.get("name", "unnamed")), rank, roots, coroots, sigma, perm)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(r) for r in self.simple_roots],
            "simple_coroots": [list(r) for r in self.simple_coroots],
        }
        if self.sigma_matrix is not None:
            d["sigma_matrix"] = [x for row in self.sigma_matrix for x in row]
        if self.sigma_permutation is not None:
            d["sigma_permutation"] = list(self.sigma_permutation)
        return d


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def _rational_left_inverse(cols: Sequence[Weight]) -> Tuple[Tuple[Fraction, ...], ...]:
    """L with L @ A = I for A whose columns are ``cols`` (independent)."""
    r = len(cols)
    n = len(cols[0]) if cols else 0
    # Gram matrix G = A^T A, then L = G^{-1} A^T.
    gram = [[Fraction(pair(cols[i], cols[j])) for j in range(r)] for i in range(r)]
    inv = _invert(gram)
    return tuple(
        tuple(sum(inv[i][k] * cols[k][c] for k in range(r)) for c in range(n)) for i in range(r)
    )


def _invert(m: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValidationError("simple roots are linearly dependent")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _leading_minors_positive(m: List[List[Fraction]]) -> bool:
    n = len(m)
    a = [row[:] for row in m]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return True


def integer_kernel(m: Sequence[Sequence[int]]) -> List[Weight]:
    """Basis of {v in Z^n : m v = 0}, saturated, via unimodular column ops."""
    rows = len(m)
    n = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(i, j, x, y, z, w):
        # (col_i, col_j) <- (x col_i + y col_j, z col_i + w col_j)
        for mat in (a, u):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i], row[j] = x * ci + y * cj, z * ci + w * cj

    pivot_col = 0
    for r in range(rows):
        if pivot_col >= n:
            break
        for j in range(pivot_col + 1, n):
            if a[r][j] == 0:
                continue
            if a[r][pivot_col] == 0:
                col_op(pivot_col, j, 0, 1, 1, 0)
                continue
            g, s, t = _ext_gcd(a[r][pivot_col], a[r][j])
            p, qq = a[r][pivot_col] // g, a[r][j] // g
            col_op(pivot_col, j, s, t, -qq, p)
        if a[r][pivot_col] != 0:
            pivot_col += 1
    basis = []
    for j in range(pivot_col, n):
        v = tuple(u[i][j] for i in range(n))
        lead = next(x for x in v if x)
        basis.append(v if lead > 0 else tuple(-x for x in v))
    return sorted(basis, key=lambda v: (height(v), [-x for x in v]))


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


# ---------------------------------------------------------------------------


class RootDatum:
    """A validated :class:`BasedRootDatum` with cached derived data.

    Immutable after construction; use :func:`validate` to build one.
    """

    def __init__(self, raw: BasedRootDatum):
        self.raw = raw
        self.name = raw.name
        self.rank = raw.rank
        self.simple_roots = raw.simple_roots
        self.simple_coroots = raw.simple_coroots
        self.r = len(raw.simple_roots)
        n = raw.rank
        self.sigma = raw.sigma_matrix if raw.sigma_matrix is not None else identity(n)
        self._check_shapes()
        self.cartan = tuple(
            tuple(pair(self.simple_coroots[i], self.simple_roots[j]) for j in range(self.r))
            for i in range(self.r)
        )
        self._check_cartan()
        self._root_inverse = _rational_left_inverse(self.simple_roots) if self.r else ()
        self.sigma_order = self._sigma_order()
        self.sigma_permutation = self._check_pinning()

    # -- validation ---------------------------------------------------------
    def _check_shapes(self):
        n = self.rank
        if n <= 0:
            raise ValidationError("rank must be positive")
        if len(self.simple_coroots) != self.r:
            raise ValidationError("need one simple coroot per simple root")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != n:
                raise ValidationError(f"vector {v} does not have length {n}")
        if len(self.sigma) != n or any(len(row) != n for row in self.sigma):
            raise ValidationError("sigma_matrix has the wrong shape")

    def _check_cartan(self):
        a = self.cartan
        r = self.r
        for i in range(r):
            if a[i][i] != 2:
                raise NotFiniteType(f"<coroot_{i}, root_{i}> = {a[i][i]}, expected 2")
            for j in range(r):
                if i != j:
                    if a[i][j] > 0:
                        raise NotFiniteType("positive off-diagonal Cartan entry")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise NotFiniteType("Cartan matrix zero pattern is not symmetric")
        # symmetrise: d_i a_ij = d_j a_ji
        d: List[Optional[Fraction]] = [None] * r
        for start in range(r):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(r):
                    if i == j or a[i][j] == 0:
                        continue
                    val = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise NotFiniteType("Cartan matrix is not symmetrisable")
        sym = [[d[i] * a[i][j] for j in range(r)] for i in range(r)]
        if any(x <= 0 for x in d) or not _leading_minors_positive(sym):
            raise NotFiniteType("Cartan matrix is not of finite type")
        if r:
            # linear independence of the simple roots is implied by the Cartan
            # matrix being nonsingular, but check the lattice vectors directly
            _rational_left_inverse(self.simple_roots)

    def _sigma_order(self) -> int:
        n = self.rank
        ident = identity(n)
        power = self.sigma
        for k in range(1, MAX_SIGMA_ORDER + 1):
            if power == ident:
                return k
            power = mat_mul(power, self.sigma)
        raise NotFiniteOrder(f"sigma has order > {MAX_SIGMA_ORDER}")

    def _check_pinning(self) -> Tuple[int, ...]:
        perm = []
        for i, a in enumerate(self.simple_roots):
            image = mat_vec(self.sigma, a)
            try:
                perm.append(self.simple_roots.index(image))
            except ValueError:
                raise PinningViolated(f"sigma sends simple root {i} to {image}, not a simple root")
        if sorted(perm) != list(range(self.r)):
            raise PinningViolated("sigma does not permute the simple roots")
        given = self.raw.sigma_permutation
        if given is not None and tuple(given) != tuple(perm):
            raise PinningViolated(f"sigma_permutation {given} disagrees with sigma_matrix ({tuple(perm)})")
        # contragredient action: coroot_{perm(i)} . sigma == coroot_i
        for i, c in enumerate(self.simple_coroots):
            moved = self.simple_coroots[perm[i]]
            pulled = tuple(pair(moved, col) for col in zip(*self.sigma))
            if pulled != tuple(c):
                raise PinningViolated(f"sigma does not carry coroot {i} to coroot {perm[i]}")
        return tuple(perm)

    # -- basic operations ---------------------------------------------------
    @property
    def split(self) -> bool:
        return self.sigma_order == 1

    def apply_sigma(self, v: Sequence[int]) -> Weight:
        return mat_vec(self.sigma, v)

    def is_sigma_fixed(self, v: Sequence[int]) -> bool:
        return self.apply_sigma(v) == tuple(v)

    def coroot_pairings(self, v: Sequence[int]) -> Tuple[int, ...]:
        return tuple(pair(c, v) for c in self.simple_coroots)

    def is_dominant(self, v: Sequence[int]) -> bool:
        return all(x >= 0 for x in self.coroot_pairings(v))

    def is_antidominant(self, v: Sequence[int]) -> bool:
        return all(x <= 0 for x in self.coroot_pairings(v))

    def reflect(self, i: int, v: Sequence[int]) -> Weight:
        k = pair(self.simple_coroots[i], v)
        a = self.simple_roots[i]
        return tuple(x - k * y for x, y in zip(v, a))

    def reflect_coweight(self, i: int, c: Sequence) -> tuple:
        k = pair(c, self.simple_roots[i])
        a = self.simple_coroots[i]
        return tuple(x - k * y for x, y in zip(c, a))

    def root_coordinates(self, beta: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Integer coordinates of beta in the simple roots, or None if
        beta is not in the root lattice."""
        if self.r == 0:
            return () if not any(beta) else None
        coords = tuple(sum(l * b for l, b in zip(row, beta)) for row in self._root_inverse)
        if any(c.denominator != 1 for c in coords):
            return None
        coords = tuple(int(c) for c in coords)
        recon = [0] * self.rank
        for c, a in zip(coords, self.simple_roots):
            for k in range(self.rank):
                recon[k] += c * a[k]
        if tuple(recon) != tuple(beta):
            return None
        return coords

    def in_root_lattice(self, beta: Sequence[int]) -> bool:
        return self.root_coordinates(beta) is not None

    def from_root_coordinates(self, coords: Sequence[int]) -> Weight:
        out = [0] * self.rank
        for c, a in zip(coords, self.simple_roots):
            for k in range(self.rank):
                out[k] += c * a[k]
        return tuple(out)

    # -- derived data -------------------------------------------------------
    @cached_property
    def _roots_and_coroots(self) -> Tuple[Tuple[Weight, ...], Tuple[Weight, ...]]:
        pairs = {(a, c) for a, c in zip(self.simple_roots, self.simple_coroots)}
        frontier = list(pairs)
        while frontier:
            nxt = []
            for a, c in frontier:
                for i in range(self.r):
                    b = (self.reflect(i, a), self.reflect_coweight(i, c))
                    if b not in pairs:
                        pairs.add(b)
                        nxt.append(b)
            frontier = nxt
        positive = []
        for a, c in pairs:
            coords = self.root_coordinates(a)
            if all(x >= 0 for x in coords):
                positive.append((sum(coords), a, c))
        positive.sort()
        return tuple(a for _, a, _ in positive), tuple(c for _, _, c in positive)

    @property
    def positive_roots(self) -> Tuple[Weight, ...]:
        return self._roots_and_coroots[0]

    @property
    def positive_coroots(self) -> Tuple[Weight, ...]:
        return self._roots_and_coroots[1]

    @cached_property
    def two_rho(self) -> ShiftCovector:
        """Sum of positive coroots, as a covector on X."""
        total = [0] * self.rank
        for c in self.positive_coroots:
            for k in range(self.rank):
                total[k] += c[k]
        return ShiftCovector(tuple(total))

    @cached_property
    def rho_ad(self) -> ShiftCovector:
        return ShiftCovector(tuple(Fraction(x, 2) for x in self.two_rho.values))

    @cached_property
    def rho_hat_doubled(self) -> Weight:
        """Sum of positive roots (twice the half-sum), an honest lattice vector."""
        total = [0] * self.rank
        for a in self.positive_roots:
            for k in range(self.rank):
                total[k] += a[k]
        return tuple(total)

    @cached_property
    def fixed_basis(self) -> Tuple[Weight, ...]:
        n = self.rank
        m = [[self.sigma[i][j] - int(i == j) for j in range(n)] for i in range(n)]
        return tuple(integer_kernel(m))

    @cached_property
    def sigma_orbits(self) -> Tuple[Tuple[int, ...], ...]:
        """Orbits of sigma on simple-root indices, in increasing order."""
        seen = set()
        orbits = []
        for i in range(self.r):
            if i in seen:
                continue
            orb = []
            j = i
            while j not in orb:
                orb.append(j)
                j = self.sigma_permutation[j]
            seen.update(orb)
            orbits.append(tuple(sorted(orb)))
        return tuple(orbits)

    def __repr__(self):
        return f"RootDatum({self.name!r}, rank={self.rank}, r={self.r}, sigma_order={self.sigma_order})"


def validate(datum: BasedRootDatum) -> RootDatum:
    return RootDatum(datum)


def positive_roots(datum: RootDatum) -> List[Weight]:
    return list(datum.positive_roots)


def rho_ad(datum: RootDatum) -> ShiftCovector:
    return datum.rho_ad


def shift_from_weight(datum: RootDatum, weight: Sequence) -> ShiftCovector:
    """The covector beta -> <weight, beta> for a dominant weight of G."""
    if len(weight) != datum.rank:
        raise ValidationError(f"weight {tuple(weight)} must have length {datum.rank}")
    shift = ShiftCovector(tuple(weight))
    for i, a in enumerate(datum.simple_roots):
        if shift.pair(a) < 0:
            raise NotDominant(f"<{tuple(weight)}, simple root {i}> < 0")
    return shift


def zero_shift(datum: RootDatum) -> ShiftCovector:
    return ShiftCovector((0,) * datum.rank)


def dominance_leq(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> bool:
    """lam <= mu iff mu - lam is a nonnegative integer combination of simple roots."""
    coords = datum.root_coordinates(vsub(mu, lam))
    return coords is not None and all(c >= 0 for c in coords)


def fixed_sublattice(datum: RootDatum) -> Tuple[Weight, ...]:
    return datum.fixed_basis


def in_fixed_sublattice(datum: RootDatum, v: Sequence[int]) -> bool:
    return datum.is_sigma_fixed(v)


def weights_up_to_height(datum: RootDatum, h: int) -> Iterator[Weight]:
    """All lattice vectors with l1 norm <= h, in (height, lex) order."""
    n = datum.rank
    found = []
    for v in itertools.product(range(-h, h + 1), repeat=n):
        if height(v) <= h:
            found.append(v)
    found.sort(key=lambda v: (height(v), v))
    return iter(found)


def antidominant_fixed_weights(datum: RootDatum, h: int) -> List[Weight]:
    return [
        v for v in weights_up_to_height(datum, h)
        if datum.is_antidominant(v) and datum.is_sigma_fixed(v)
    ]


def dominant_weights_up_to_height(datum: RootDatum, h: int) -> List[Weight]:
    return [v for v in weights_up_to_height(datum, h) if datum.is_dominant(v)]


# ---------------------------------------------------------------------------
# file format and catalog


def load_datum(path) -> RootDatum:
    with open(path) as fh:
        return validate(BasedRootDatum.from_dict(json.load(fh)))


def dump_datum(datum: RootDatum | BasedRootDatum, path) -> None:
    raw = datum.raw if isinstance(datum, RootDatum) else datum
    Path(path).write_text(json.dumps(raw.to_dict(), indent=2) + "\n")


_CATALOG: Optional[Dict[str, RootDatum]] = None


def catalog() -> Dict[str, RootDatum]:
    """Built-in data, keyed by the name of the p-adic group G."""
    global _CATALOG
    if _CATALOG is None:
        text = resources.files("satake").joinpath("catalog.json").read_text()
        entries = json.loads(text)
        _CATALOG = {e["name"]: validate(BasedRootDatum.from_dict(e)) for e in entries}
    return dict(_CATALOG)


def get_datum(name: str) -> RootDatum:
    data = catalog()
    if name not in data:
        raise UnknownName(f"no catalog datum named {name!r}; known: {', '.join(data)}")
    return data[name]
