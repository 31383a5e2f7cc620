"""Continued fractions, planar lattice minima, and certified Diophantine
exponent estimates.

The heavy lifting lives in the compiled extension `_diophant`; everything it
returns is plain python data (ints, strings, dicts).  Interval endpoints are
exact rationals rendered as "p/q" strings; `fractions.Fraction` accepts them
directly.
"""

from ._diophant import (
    BudgetError,
    ContinuedFraction,
    DataExhausted,
    FormulaInapplicable,
    QuotientsExhausted,
    exponents,
    floor_pow,
    log_enclose,
    minima,
    pow_compare,
    profile,
    verify,
    __version__,
)

__all__ = [
    "BudgetError",
    "ContinuedFraction",
    "DataExhausted",
    "FormulaInapplicable",
    "QuotientsExhausted",
    "exponents",
    "floor_pow",
    "log_enclose",
    "minima",
    "pow_compare",
    "profile",
    "verify",
    "__version__",
]
