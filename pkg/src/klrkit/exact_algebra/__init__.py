"""Exact arithmetic kernel: Q(q), Q(q)(u), sparse polynomials, truncated series."""

from .linalg import bareiss_echelon, rank, solve_nullspace
from .multipoly import MultiPoly, demazure, exact_divide, monomials_upto, random_poly
from .ratfunc import QQ_ONE, QQ_ZERO, RationalFunctionQ, RationalFunctionQU, UPoly
from .series import (
    TruncSeries,
    expm1_series,
    log1p_series,
    series_divide_linear,
    series_substitute,
)

__all__ = [
    "MultiPoly",
    "QQ_ONE",
    "QQ_ZERO",
    "RationalFunctionQ",
    "RationalFunctionQU",
    "TruncSeries",
    "UPoly",
    "bareiss_echelon",
    "demazure",
    "exact_divide",
    "expm1_series",
    "log1p_series",
    "monomials_upto",
    "random_poly",
    "rank",
    "series_divide_linear",
    "series_substitute",
    "solve_nullspace",
]
