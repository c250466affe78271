"""Zeros of Newman and Littlewood polynomials inside the unit disk."""

from .diskcount import ZeroCount, circle_zeros, count_exact, count_numeric
from .poly import LITTLEWOOD, NEWMAN, IntPoly, Pattern, from_string, to_string

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "Pattern",
    "ZeroCount",
    "count_exact",
    "count_numeric",
    "circle_zeros",
    "from_string",
    "to_string",
    "NEWMAN",
    "LITTLEWOOD",
]
