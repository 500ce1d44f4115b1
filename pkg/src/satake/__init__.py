"""Integral spherical Hecke algebras through the invariant-ring model of the
Satake isomorphism, with a brute-force GL_n oracle over F_q((t))."""
from __future__ import annotations

__version__ = "0.1.0"

from .charalg import LatticeAlgebraElement, m_element, twisted_action
from .errors import SatakeError
from .hecke import (
    HeckeAlgebraHandle,
    HeckeElement,
    double_coset_basis,
    hecke_algebra,
    hecke_multiply,
    structure_constants,
    weight_hecke,
)
from .kostka import character_image, kostka_foulkes
from .qpoly import LaurentPoly, QMode
from .rootdata import RootDatum, ShiftCovector, catalog, get_datum

__all__ = [
    "HeckeAlgebraHandle",
    "HeckeElement",
    "LatticeAlgebraElement",
    "LaurentPoly",
    "QMode",
    "RootDatum",
    "SatakeError",
    "ShiftCovector",
    "catalog",
    "character_image",
    "double_coset_basis",
    "get_datum",
    "hecke_algebra",
    "hecke_multiply",
    "kostka_foulkes",
    "m_element",
    "structure_constants",
    "twisted_action",
    "weight_hecke",
]
