"""Exact rational plumbing: coercion, scaling, and decimal rendering.

Everything outside the Monte Carlo estimator works on ``fractions.Fraction``.
Floats are rejected at the boundary so binary rounding can never leak into
results that are contractually exact.
"""

from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Sequence, Union

Rational = Union[int, str, Fraction]

#: Largest common denominator for which value tables are rescaled to integers.
#: Beyond this the integer tables would dwarf the Fractions they replace.
MAX_SCALE = 1 << 62


def as_fraction(value: Rational, where: str = "value") -> Fraction:
    """Coerce an int, ``"a/b"`` string, or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"{where}: expected a rational, got a bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(
            f"{where}: decimal floats are rejected in exact inputs; "
            "use an integer or an 'a/b' string"
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{where}: not a rational string: {value!r}") from exc
    raise ValueError(f"{where}: cannot interpret {type(value).__name__} as a rational")


def integer_scaled(values: Sequence[Fraction]) -> tuple[int, list[int]] | None:
    """Rescale rationals to integers by their common denominator.

    Returns ``(scale, ints)`` with ``ints[k] == values[k] * scale`` exactly,
    or None when the common denominator exceeds :data:`MAX_SCALE` (pathological
    inputs are better served by staying in Fraction arithmetic).
    """
    scale = 1
    for value in values:
        scale = scale * value.denominator // math.gcd(scale, value.denominator)
        if scale > MAX_SCALE:
            return None
    return scale, [value.numerator * (scale // value.denominator) for value in values]


def decimal_approx(value: Fraction) -> float:
    """Round to 10 significant decimal digits, ties to even, then to float."""
    with localcontext() as ctx:
        ctx.prec = 10
        ctx.rounding = ROUND_HALF_EVEN
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return float(quotient)
