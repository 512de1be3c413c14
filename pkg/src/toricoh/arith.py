"""Exact integer and rational helpers.

All rational quantities in the package are :class:`fractions.Fraction`
instances, which are kept reduced with a positive denominator.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from .errors import InvalidInput

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def floor_div(a: int, d: int) -> int:
    """Euclidean floor ``q`` with ``a = q*d + s`` and ``0 <= s < d``.

    >>> floor_div(-7, 3)
    -3
    """
    if d <= 0:
        raise InvalidInput(f"floor_div needs a positive divisor, got {d}")
    return a // d


def frac_part(x: RationalLike) -> Fraction:
    """Fractional part ``x - floor(x)``, always in ``[0, 1)``."""
    x = to_rational(x)
    return x - math.floor(x)


def mod_inverse(p: int, d: int) -> int:
    """Inverse of ``p`` modulo ``d`` as an integer in ``[1, d)``."""
    if d < 2:
        raise InvalidInput(f"mod_inverse needs a modulus >= 2, got {d}")
    try:
        return pow(p % d, -1, d)
    except ValueError:
        raise InvalidInput(f"{p} has no inverse modulo {d}") from None


def gcd_list(xs: Iterable[int]) -> int:
    """gcd of all entries; the empty list gives 0."""
    return reduce(math.gcd, xs, 0)


def to_rational(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction.

    >>> to_rational("-6/4")
    Fraction(-3, 2)

    Floats and decimal strings are rejected on purpose.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInput(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise InvalidInput(f"not a rational of the form num/den: {x!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise InvalidInput(f"zero denominator in {x!r}")
        return Fraction(num, den)
    raise InvalidInput(f"not a rational: {x!r}")


def format_rational(x: RationalLike) -> str:
    """Textual form ``"num/den"``, denominator omitted when it is 1."""
    return str(to_rational(x))
