"""Exact computer algebra for rational shuffle algebras, degenerate affine
Hecke operators, quantum minors, and GKLO difference operators.

All arithmetic is exact (arbitrary-precision rationals); every identity the
library claims is checked as an exact equality of canonical forms.
"""

from .exactalg import (
    ExactDivisionError,
    ParseError,
    Polynomial,
    RationalFunction,
    Variable,
    denominator_admissible,
    expand_at_infinity,
    parse_expression,
    poly,
    poly_gcd,
    rf,
    rf_arith,
    rf_shift,
    var,
)

__version__ = "0.1.0"
