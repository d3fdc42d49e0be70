"""Geometric domain models.

Values that carry arbitrary-precision numbers are frozen dataclasses holding
``mpmath.mpf``; ``to_dict`` renders them as decimal strings for JSON sidecars.
Plain-number records are pydantic models.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpf
from pydantic import BaseModel

from papertorus.core.models.triangulation import Face, Triangulation

Point3 = Tuple[mpf, mpf, mpf]
Point2 = Tuple[mpf, mpf]


def fmt(x: Any, digits: int = 20) -> str:
    """Decimal string for an mpf (or anything mpmath can format)."""
    return mpmath.nstr(x, digits)


@dataclass(frozen=True)
class Configuration:
    """Vertex coordinates attached to a triangulation."""

    triangulation: Triangulation
    coordinates: Tuple[Point3, ...]
    precision: int = 64
    # decimal strings the coordinates were read from, when they came from text
    decimals: Optional[Tuple[Tuple[str, ...], ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.coordinates) != self.triangulation.vertex_count:
            raise ValueError(
                f"expected {self.triangulation.vertex_count} coordinates, "
                f"got {len(self.coordinates)}"
            )

    @classmethod
    def from_values(
        cls, triangulation: Triangulation, values: Sequence[Sequence[Any]], precision: int = 64
    ) -> "Configuration":
        """Build from anything mpmath accepts (decimal strings keep full precision)."""
        with mpmath.workdps(precision):
            coords = tuple(tuple(mpf(x) for x in row) for row in values)
        decimals = None
        if all(isinstance(x, str) for row in values for x in row):
            decimals = tuple(tuple(row) for row in values)
        return cls(triangulation, coords, precision, decimals)  # type: ignore[arg-type]

    def point(self, v: int) -> Point3:
        return self.coordinates[v]

    def face_points(self, face_index: int) -> Tuple[Point3, Point3, Point3]:
        a, b, c = self.triangulation.faces[face_index]
        return self.coordinates[a], self.coordinates[b], self.coordinates[c]

    def as_floats(self) -> List[Tuple[float, float, float]]:
        return [(float(x), float(y), float(z)) for x, y, z in self.coordinates]

    def with_coordinates(self, coordinates: Tuple[Point3, ...]) -> "Configuration":
        return Configuration(self.triangulation, coordinates, self.precision)

    def with_precision(self, precision: int) -> "Configuration":
        return Configuration(self.triangulation, self.coordinates, precision, self.decimals)


@dataclass(frozen=True)
class PupTentParams:
    """Heights (z0, z1, z2) of the symmetric pup tent family."""

    z0: mpf
    z1: mpf
    z2: mpf

    @classmethod
    def from_values(cls, z0: Any, z1: Any, z2: Any, precision: int = 64) -> "PupTentParams":
        with mpmath.workdps(precision):
            return cls(mpf(z0), mpf(z1), mpf(z2))

    def as_tuple(self) -> Tuple[mpf, mpf, mpf]:
        return (self.z0, self.z1, self.z2)

    def to_dict(self, digits: int = 40) -> Dict[str, str]:
        return {"z0": fmt(self.z0, digits), "z1": fmt(self.z1, digits), "z2": fmt(self.z2, digits)}


@dataclass(frozen=True)
class FlatnessReport:
    """Cone angles of a configuration and their worst deviation from 2*pi."""

    cone_angles: Tuple[mpf, ...]
    max_deviation: mpf

    @property
    def deviations(self) -> Tuple[mpf, ...]:
        two_pi = 2 * mpmath.pi
        return tuple(theta - two_pi for theta in self.cone_angles)

    def to_dict(self, digits: int = 20) -> Dict[str, Any]:
        return {
            "cone_angles": [fmt(t, digits) for t in self.cone_angles],
            "deviations": [fmt(d, 5) for d in self.deviations],
            "max_deviation": fmt(self.max_deviation, 5),
        }


class HullReport(BaseModel):
    """Convex hull facets and how many of them are torus faces."""

    facet_list: List[Face]
    on_hull: List[bool]
    face_number: int
    torus_facets: List[Face]
    edge_count: int


@dataclass(frozen=True)
class Development:
    """Planar unfolding of a near-flat torus over one fundamental domain."""

    base_face: int
    vertex_lifts: Tuple[Point2, ...]
    face_positions: Tuple[Tuple[Point2, Point2, Point2], ...]
    lattice: Tuple[Point2, Point2]
    rotational_holonomy: Tuple[mpf, mpf]
    generator_edges: Tuple[Tuple[int, int], Tuple[int, int]] = field(default=((0, 0), (0, 0)))

    def to_dict(self, digits: int = 20) -> Dict[str, Any]:
        return {
            "base_face": self.base_face,
            "vertex_lifts": [[fmt(x, digits), fmt(y, digits)] for x, y in self.vertex_lifts],
            "lattice": [[fmt(x, digits), fmt(y, digits)] for x, y in self.lattice],
            "rotational_holonomy": [fmt(a, 5) for a in self.rotational_holonomy],
            "generator_edges": [list(e) for e in self.generator_edges],
        }


@dataclass(frozen=True)
class Plane:
    """Plane through ``point`` with unit ``normal``."""

    point: Point3
    normal: Point3


@dataclass(frozen=True)
class SliceResult:
    """Intersection of a configuration with a plane, in plane coordinates."""

    plane: Plane
    loops: Tuple[Tuple[Point2, ...], ...]
    open_chains: Tuple[Tuple[Point2, ...], ...] = ()
    basis: Optional[Tuple[Point3, Point3]] = None

    def rows(self) -> List[Tuple[int, float, float]]:
        """CSV rows ``loop_id, x, y``."""
        return [(i, float(x), float(y)) for i, loop in enumerate(self.loops) for x, y in loop]
