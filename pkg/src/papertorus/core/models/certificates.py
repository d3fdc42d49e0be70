"""Certificate records produced by the certifier."""

from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from papertorus.core.models.triangulation import Triangulation

PairKind = Literal["disjoint", "shared-vertex"]


@dataclass(frozen=True)
class ScaledIntegerConfig:
    """Coordinates multiplied by ``scale`` and truncated toward zero."""

    scale: int
    coordinates: Tuple[Tuple[int, int, int], ...]
    triangulation: Triangulation


class SeparationCertificate(BaseModel):
    """
    A direction separating two faces with an exact integer margin.

    ``side`` 0 means face ``pair[0]`` lies below (``M_0 + margin <= m_1``),
    side 1 the reverse. For shared-vertex pairs the shared vertex sits
    between the two opposite edges with the margin on both sides.
    """

    pair: Tuple[int, int]
    kind: PairKind
    direction: Tuple[int, int, int]
    side: Literal[0, 1]
    margin: int
    shared_vertex: Optional[int] = None

    def line(self) -> str:
        """Bundle line ``<pair> <kind> <L=(x,y,z)> <side> <margin>``."""
        x, y, z = self.direction
        return f"{self.pair[0]},{self.pair[1]} {self.kind} L=({x},{y},{z}) {self.side} {self.margin}"


class VectorBound(BaseModel):
    """Norms of one relevant vector pair (V1, V2) at the center."""

    face: int
    apex: int
    order: Tuple[int, int]
    v1_norm: float
    v2_norm: float
    cross_norm: float


class CrudeBoundReport(BaseModel):
    """Evidence for the second-derivative bound on the angle map."""

    vector_bounds: List[VectorBound] = Field(default_factory=list)
    min_vector_norm: float = 0.0
    max_vector_norm: float = 0.0
    min_cross_norm: float = 0.0
    max_cross_norm: float = 0.0
    slack: float = 1e-3
    g11_max: float = 0.0
    g12_max: float = 0.0
    n_max: float = 0.0
    d_min: float = 0.0
    friendly_term_count_bound: int = 48
    friendly_term_bound: float = 1e7
    second_derivative_bound: float = 1e9


class ExistenceCertificate(BaseModel):
    """The inverse-function-theorem chain concluding a flat torus exists nearby."""

    flatness_at_p: str
    flatness_required: str = "1e-15"
    M: List[List[str]]
    dF: List[List[str]]
    eigenvalues_M: List[str]
    min_abs_eigenvalue: str
    dF_minus_M_inf: str
    crude_drift: str
    dF_minus_M_inf_on_ball: str
    min_singular_value_dF: str
    expansion_lambda: str = "0.25"
    ball_radius: str = "1e-13"
    image_radius: str
    conclusion_radius: str
    precision: int
    links: List[Tuple[str, bool]] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(ok for _, ok in self.links)
