"""Weyl group actions on the weight lattice.

The group itself is never materialised for orbit work; orbits are breadth
first closures under simple reflections.  The sigma-fixed subgroup W0 acts
on X^sigma through folded generators, one per sigma-orbit of simple roots:
the longest element of the parabolic subgroup spanned by that orbit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .errors import MethodMismatch, NotSigmaFixed, OrbitTooLarge, WeylGroupTooLarge
from .rootdata import Matrix, RootDatum, Weight, height, identity, mat_mul

DEFAULT_ORBIT_CAP = 10 ** 6
DEFAULT_GROUP_CAP = 10 ** 4


def _order_key(v: Weight):
    return (height(v), v)


@dataclass(frozen=True)
class OrbitResult:
    elements: Tuple[Weight, ...]
    antidominant_rep: Weight
    dominant_rep: Weight

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v):
        return tuple(v) in self.elements


def antidominant_rep(datum: RootDatum, v: Sequence[int]) -> Weight:
    """Unique antidominant element of W v, by repeated descent."""
    v = tuple(v)
    while True:
        for i, k in enumerate(datum.coroot_pairings(v)):
            if k > 0:
                v = datum.reflect(i, v)
                break
        else:
            return v


def dominant_rep(datum: RootDatum, v: Sequence[int]) -> Weight:
    v = tuple(v)
    while True:
        for i, k in enumerate(datum.coroot_pairings(v)):
            if k < 0:
                v = datum.reflect(i, v)
                break
        else:
            return v


def _closure(start: Weight, moves, cap: int) -> List[Weight]:
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for move in moves:
                w = move(v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > cap:
                        raise OrbitTooLarge(f"orbit exceeds {cap} elements")
        frontier = nxt
    return sorted(seen, key=_order_key)


def w_orbit(datum: RootDatum, lam: Sequence[int], cap: int = DEFAULT_ORBIT_CAP) -> OrbitResult:
    lam = tuple(lam)
    moves = [lambda v, i=i: datum.reflect(i, v) for i in range(datum.r)]
    elements = _closure(lam, moves, cap)
    return OrbitResult(tuple(elements), antidominant_rep(datum, lam), dominant_rep(datum, lam))


# ---------------------------------------------------------------------------
# folded generators


def apply_word(datum: RootDatum, word: Sequence[int], v: Sequence[int]) -> Weight:
    """Apply s_{w[0]} s_{w[1]} ... s_{w[-1]} (rightmost first)."""
    v = tuple(v)
    for i in reversed(word):
        v = datum.reflect(i, v)
    return v


def _is_positive_root(datum: RootDatum, beta: Weight) -> bool:
    coords = datum.root_coordinates(beta)
    return all(c >= 0 for c in coords)


@dataclass(frozen=True)
class FoldedGenerator:
    orbit: Tuple[int, ...]
    word: Tuple[int, ...]

    def apply(self, datum: RootDatum, v: Sequence[int]) -> Weight:
        return apply_word(datum, self.word, v)


def longest_word(datum: RootDatum, indices: Sequence[int]) -> Tuple[int, ...]:
    """Reduced word for the longest element of the parabolic W_J."""
    word: List[int] = []
    while True:
        for j in indices:
            if _is_positive_root(datum, apply_word(datum, word, datum.simple_roots[j])):
                word.append(j)
                break
        else:
            return tuple(word)


@lru_cache(maxsize=None)
def _folded(datum: RootDatum) -> Tuple[FoldedGenerator, ...]:
    return tuple(FoldedGenerator(orb, longest_word(datum, orb)) for orb in datum.sigma_orbits)


def folded_generators(datum: RootDatum) -> Tuple[FoldedGenerator, ...]:
    return _folded(datum)


def _require_fixed(datum: RootDatum, lam: Weight):
    if not datum.is_sigma_fixed(lam):
        raise NotSigmaFixed(f"{lam} is not fixed by sigma")


def w0_orbit(datum: RootDatum, lam: Sequence[int], cap: int = DEFAULT_ORBIT_CAP) -> OrbitResult:
    """W0-orbit of a sigma-fixed weight, computed two ways and cross-checked."""
    lam = tuple(lam)
    _require_fixed(datum, lam)
    full = w_orbit(datum, lam, cap)
    by_intersection = [v for v in full.elements if datum.is_sigma_fixed(v)]
    gens = folded_generators(datum)
    by_folding = _closure(lam, [lambda v, g=g: g.apply(datum, v) for g in gens], cap)
    if by_intersection != by_folding:
        raise MethodMismatch(
            f"W0-orbit of {lam}: intersection gives {len(by_intersection)}, folding gives {len(by_folding)}"
        )
    anti = antidominant_in_fixed(datum, lam)
    dom = dominant_rep(datum, lam)
    return OrbitResult(tuple(by_folding), anti, dom)


def antidominant_in_fixed(datum: RootDatum, lam: Sequence[int]) -> Weight:
    """Descend with folded generators; the result is W-antidominant too."""
    lam = tuple(lam)
    _require_fixed(datum, lam)
    gens = folded_generators(datum)
    v = lam
    while True:
        pairings = datum.coroot_pairings(v)
        for g in gens:
            if any(pairings[j] > 0 for j in g.orbit):
                v = g.apply(datum, v)
                break
        else:
            break
    if not datum.is_antidominant(v):
        raise MethodMismatch(f"folded descent of {lam} stopped at non-antidominant {v}")
    return v


# ---------------------------------------------------------------------------
# explicit group elements, only for the small groups needed by Kostka sums


def reflection_matrix(datum: RootDatum, i: int) -> Matrix:
    n = datum.rank
    cols = [datum.reflect(i, tuple(int(k == j) for k in range(n))) for j in range(n)]
    return tuple(tuple(cols[j][k] for j in range(n)) for k in range(n))


@lru_cache(maxsize=None)
def _weyl_group(datum: RootDatum, cap: int) -> Tuple[Tuple[Matrix, int], ...]:
    gens = [reflection_matrix(datum, i) for i in range(datum.r)]
    start = identity(datum.rank)
    lengths: Dict[Matrix, int] = {start: 0}
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for m in frontier:
            for g in gens:
                w = mat_mul(m, g)
                if w not in lengths:
                    lengths[w] = depth
                    nxt.append(w)
                    if len(lengths) > cap:
                        raise WeylGroupTooLarge(f"|W| exceeds {cap}")
        frontier = nxt
    return tuple(sorted(lengths.items(), key=lambda item: (item[1], item[0])))


def weyl_group(datum: RootDatum, cap: int = DEFAULT_GROUP_CAP) -> Tuple[Tuple[Matrix, int], ...]:
    """All (matrix, length) pairs of W acting on X."""
    return _weyl_group(datum, cap)
