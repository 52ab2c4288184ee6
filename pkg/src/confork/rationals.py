"""Parsing and formatting of exact rationals for the JSON interchange formats.

Rationals travel as strings of the form ``"num/den"`` (or a bare integer).
Decimal and scientific literals are rejected on purpose: every value in this
package is exact and nothing may pass through floating point.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import FormatError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"`` into an exact Fraction."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise FormatError(f"not an exact rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"num/den"`` in lowest terms (Fraction normalizes)."""
    return f"{value.numerator}/{value.denominator}"
