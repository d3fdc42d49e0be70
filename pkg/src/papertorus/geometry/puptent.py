"""The symmetric pup tent family T(z0, z1, z2) and its published data."""

from typing import Dict, Tuple

import mpmath
from mpmath import mpf

from papertorus.combinatorics.triangulations import BEST8_SYMMETRY, best8_triangulation
from papertorus.core.errors import InsufficientPrecision
from papertorus.core.models import Configuration, PupTentParams

MIN_PRECISION = 32

# (x, y) of vertices 0..7 and which height each row takes: 0, 1, 2 -> z0, z1, z2; None -> 0.
PUP_TENT_XY: Tuple[Tuple[str, str], ...] = (
    ("0.755", "0.650"),
    ("-0.455", "0.345"),
    ("-0.170", "1.140"),
    ("0.455", "-0.345"),
    ("-0.755", "-0.650"),
    ("-0.090", "0.665"),
    ("0.170", "-1.140"),
    ("0.090", "-0.665"),
)
HEIGHT_INDEX: Tuple[object, ...] = (0, 1, 2, 1, 0, None, 2, None)

# Vertices moving with each parameter.
PARAMETER_VERTICES: Tuple[Tuple[int, int], ...] = ((0, 4), (1, 3), (2, 6))

PUBLISHED_Z = (
    "0.98050571585977935561653820085693",
    "0.99028162433430542934317615858328",
    "0.97653883470312317624184245672434",
)

# Intrinsic development: lifts of vertices 0..7 and the deck group generators.
PUBLISHED_DEVELOPMENT: Dict[str, Tuple[Tuple[str, str], ...]] = {
    "vertices": (
        ("0.336430646031", "4.529204354142"),
        ("-1.238519450198", "2.755373072854"),
        ("-1.709282918080", "3.456672311107"),
        ("0.870590283280", "3.637692127462"),
        ("-0.704359812948", "1.863860846174"),
        ("-0.644527750478", "3.684596703719"),
        ("1.341353751162", "2.936392889208"),
        ("0.276598583560", "2.708468496596"),
    ),
    "lattice": (
        ("2.822836536730", "1.773831281287"),
        ("-2.486405890699", "2.755373072854"),
    ),
}


def published_params(precision: int = 64) -> PupTentParams:
    return PupTentParams.from_values(*PUBLISHED_Z, precision=precision)


def build_pup_tent(p: PupTentParams, precision: int = 64) -> Configuration:
    """
    Configuration of T(z0, z1, z2) on the best 8-vertex triangulation.

    Raises:
        InsufficientPrecision: precision below 32 digits
    """
    if precision < MIN_PRECISION:
        raise InsufficientPrecision(
            f"pup tent coordinates need at least {MIN_PRECISION} digits, got {precision}"
        )
    heights = p.as_tuple()
    with mpmath.workdps(precision):
        coords = []
        for (x, y), h in zip(PUP_TENT_XY, HEIGHT_INDEX):
            z = mpf(0) if h is None else +heights[h]  # type: ignore[index]
            coords.append((mpf(x), mpf(y), z))
    return Configuration(best8_triangulation(), tuple(coords), precision)  # type: ignore[arg-type]


def published_pup_tent(precision: int = 64) -> Configuration:
    return build_pup_tent(published_params(precision), precision)


def rotate_about_z(c: Configuration) -> Configuration:
    """Apply (x, y, z) -> (-x, -y, z) and relabel by the pup tent symmetry."""
    rotated = [None] * c.triangulation.vertex_count
    for v, (x, y, z) in enumerate(c.coordinates):
        rotated[BEST8_SYMMETRY[v]] = (-x, -y, z)
    return c.with_coordinates(tuple(rotated))  # type: ignore[arg-type]


def params_from_configuration(c: Configuration) -> PupTentParams:
    """Read (z0, z1, z2) back from vertices 0, 1 and 2."""
    return PupTentParams(c.point(0)[2], c.point(1)[2], c.point(2)[2])
