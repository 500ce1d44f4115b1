"""Independent ground truth for GL_n over F_q((t))."""
from .counts import (
    convolution_table,
    convolve_count,
    dominates_gl,
    hermite_cosets,
    satake_count,
    satake_vector,
    unipotent_box,
)
from .field import GF, field
from .series import OracleMatrix, TruncSeries
from .smith import random_unimodular, smith_by_minors, smith_valuations, smith_with_retry

__all__ = [
    "GF",
    "OracleMatrix",
    "TruncSeries",
    "convolution_table",
    "convolve_count",
    "dominates_gl",
    "field",
    "hermite_cosets",
    "random_unimodular",
    "satake_count",
    "satake_vector",
    "smith_by_minors",
    "smith_valuations",
    "smith_with_retry",
    "unipotent_box",
]
