"""Exact rational helpers: parsing, rendering and common denominators."""

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable

from ._types import RationalLike
from .errors import ConfigFormatError


def as_rational(value: RationalLike | Fraction) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction.

    Floats and bools are rejected: accepting them would silently introduce
    binary rounding.
    """
    if isinstance(value, bool):
        raise ConfigFormatError(f"Expected a number, got boolean {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):  # pyright: ignore[reportUnnecessaryIsInstance]
        text = value.strip()
        numerator, sep, denominator = text.partition("/")
        try:
            p = int(numerator)
            q = int(denominator) if sep else 1
        except ValueError:
            raise ConfigFormatError(f"Invalid rational literal {value!r}") from None
        if q <= 0:
            raise ConfigFormatError(
                f"Invalid rational literal {value!r}: denominator must be positive"
            )
        return Fraction(p, q)
    raise ConfigFormatError(f"Expected an integer or 'p/q' string, got {value!r}")


def format_rational(value: Fraction) -> str:
    """Render as "p/q" (or "p" when integral), the JSON form."""
    return str(value)


def format_rational_approx(value: Fraction) -> str:
    """Render as "p/q (≈x.xxx)" for tables; integers print bare."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value} (≈{float(value):.3f})"


def common_denominator(values: Iterable[Fraction]) -> int:
    """LCM of all denominators; 1 for an empty input."""
    return reduce(lcm, (v.denominator for v in values), 1)
