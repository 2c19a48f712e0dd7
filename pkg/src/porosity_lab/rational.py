"""Exact rational values and their wire format.

Every quantity that feeds a verdict is a fractions.Fraction; floats never
enter a comparison.  The only non-rational value that circulates is the
infinity marker used for diverging gap ratios, represented by the float
infinity because Fraction compares against it exactly.

Wire format: a rational serializes as the string "p/q" (or "p" when the
denominator is 1), infinity as the string "inf".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = [
    "INF",
    "Rational",
    "RationalLike",
    "format_rational",
    "is_finite",
    "parse_rational",
]

Rational = Fraction
RationalLike = Union[Fraction, float]

INF = float("inf")


def is_finite(x: RationalLike) -> bool:
    """True for Fraction values, False for the infinity marker."""
    return x != INF


def format_rational(x: RationalLike) -> str:
    """Serialize a rational (or the infinity marker) to its wire string.

    >>> format_rational(Fraction(3, 2))
    '3/2'
    >>> format_rational(Fraction(7))
    '7'
    >>> format_rational(INF)
    'inf'
    """
    if x == INF:
        return "inf"
    frac = Fraction(x)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def parse_rational(text: str) -> RationalLike:
    """Parse the wire string back to a Fraction (or infinity marker).

    Accepts "p", "p/q", and "inf".  Raises ValueError on anything else,
    including floats in decimal notation: exactness is the point.
    """
    text = text.strip()
    if text == "inf":
        return INF
    if "." in text or "e" in text or "E" in text:
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc
