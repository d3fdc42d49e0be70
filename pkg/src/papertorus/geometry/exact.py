"""Exact integer arithmetic on scaled coordinates."""

from decimal import ROUND_DOWN, Decimal, localcontext
from typing import Sequence, Tuple

import mpmath

from papertorus.core.errors import InsufficientPrecision
from papertorus.core.models import Configuration, ScaledIntegerConfig
from papertorus.settings import DEFAULT_SCALE_EXPONENT

IntPoint = Tuple[int, int, int]


def scaled_integer(x: mpmath.mpf, exponent: int, precision: int) -> int:
    """
    ``x * 10**exponent`` truncated toward zero.

    The value goes through its decimal expansion at ``precision`` digits so
    short decimal inputs such as 0.755 scale exactly.
    """
    text = mpmath.nstr(x, precision)
    with localcontext() as ctx:
        ctx.prec = precision + exponent + 16
        value = Decimal(text).scaleb(exponent)
        return int(value.to_integral_value(rounding=ROUND_DOWN))


def scale_to_integers(
    c: Configuration, exponent: int = DEFAULT_SCALE_EXPONENT
) -> ScaledIntegerConfig:
    """
    Multiply every coordinate by 10**exponent and truncate toward zero.

    Raises:
        InsufficientPrecision: the configuration carries fewer digits than the scale
    """
    if c.precision < exponent:
        raise InsufficientPrecision(
            f"scaling by 10^{exponent} needs {exponent} digits, configuration has {c.precision}"
        )
    coords = tuple(
        tuple(scaled_integer(x, exponent, c.precision) for x in point) for point in c.coordinates
    )
    return ScaledIntegerConfig(scale=10**exponent, coordinates=coords, triangulation=c.triangulation)  # type: ignore[arg-type]


def isub(a: Sequence[int], b: Sequence[int]) -> IntPoint:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def idot(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def icross(a: Sequence[int], b: Sequence[int]) -> IntPoint:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def orient3d(a: Sequence[int], b: Sequence[int], c: Sequence[int], d: Sequence[int]) -> int:
    """Sign of det[b - a, c - a, d - a]: +1 when d lies on the side of (b - a) x (c - a)."""
    value = idot(icross(isub(b, a), isub(c, a)), isub(d, a))
    return (value > 0) - (value < 0)
