"""Exact discovery and verification of differential operators for
generalized Laguerre, Sobolev-Laguerre and Jacobi polynomial families."""

from .exact import Rat, gen_binomial, parse_rat, format_rat, pochhammer
from .poly import MPoly, NPoly, interp_n
from .families import FamilySpec

__version__ = "0.1.0"

__all__ = [
    "Rat",
    "MPoly",
    "NPoly",
    "FamilySpec",
    "gen_binomial",
    "pochhammer",
    "parse_rat",
    "format_rat",
    "interp_n",
]
