"""Parsing, formatting and dyadic-grid helpers for exact rational scalars.

Every numeric quantity in this package is a `fractions.Fraction`.  The
standard-library type already provides the invariants exact arithmetic
needs: values are stored reduced, denominators are positive, equality is
value equality.  This module adds the string conventions used at the
package boundary ("p/q" in files and reports, decimal renderings for
human readers) and the grid arithmetic shared by the approximation code.
"""

from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction

__all__ = [
    "ZERO",
    "ONE",
    "parse_rational",
    "format_rational",
    "decimal_string",
    "floor_to_grid",
    "is_on_grid",
    "power_of_two_level",
]

ZERO = Fraction(0)
ONE = Fraction(1)

# "p" or "p/q" with optional sign; float and exponent syntax is excluded so
# inexact values can never enter a computation through a file.
_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" or "p" string into a Fraction.

    Raises ValueError for anything else, including float notation.
    """
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    stripped = text.strip()
    if not _RATIONAL_RE.match(stripped):
        raise ValueError(f"not a rational string: {text!r}")
    return Fraction(stripped)


def format_rational(value: Fraction) -> str:
    """Render as "p/q" ("p" for integers); round-trips through parse_rational."""
    return str(value)


def decimal_string(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering to `digits` significant digits (exactly rounded)."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def floor_to_grid(value: Fraction, level: int) -> Fraction:
    """Largest multiple of 2**-level that is <= value."""
    scale = 1 << level
    return Fraction((value.numerator * scale) // value.denominator, scale)


def is_on_grid(value: Fraction, level: int) -> bool:
    """True when value is an integer multiple of 2**-level."""
    return (value.numerator << level) % value.denominator == 0


def power_of_two_level(value: Fraction) -> int | None:
    """Smallest n with value on the 2**-n grid, or None if no such n exists."""
    den = value.denominator
    if den & (den - 1):
        return None
    return den.bit_length() - 1
