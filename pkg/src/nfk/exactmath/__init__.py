"""Exact arithmetic substrate: polynomials, finite-field factoring, HNF, lattices."""

from .lattice import EnumerationLimit, NotPositiveDefinite, enumerate_bounded
from .matrix import hermite_form
from .modpoly import ModPoly, factor_mod_p
from .poly import IntPoly, discriminant, real_root_count, resultant

__all__ = [
    "EnumerationLimit",
    "IntPoly",
    "ModPoly",
    "NotPositiveDefinite",
    "discriminant",
    "enumerate_bounded",
    "factor_mod_p",
    "hermite_form",
    "real_root_count",
    "resultant",
]
