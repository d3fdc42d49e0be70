"""Models for the angle map, its Jacobian and the flatness search."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import mpmath
from mpmath import mpf
from pydantic import BaseModel, Field, field_validator, model_validator

from papertorus.core.models.geometry import PupTentParams, fmt

Matrix3 = Tuple[Tuple[mpf, mpf, mpf], Tuple[mpf, mpf, mpf], Tuple[mpf, mpf, mpf]]


@dataclass(frozen=True)
class AngleMapSample:
    """F(z0, z1, z2) = (theta_0, theta_1, theta_2)."""

    params: PupTentParams
    values: Tuple[mpf, mpf, mpf]

    def deviation(self) -> mpf:
        two_pi = 2 * mpmath.pi
        return max(abs(v - two_pi) for v in self.values)


@dataclass(frozen=True)
class JacobianReport:
    """dF at a parameter point, its inverse and conditioning data."""

    matrix: Matrix3
    inverse: Optional[Matrix3]
    inf_norm_of_inverse: Optional[mpf]
    determinant: mpf
    asymmetry_inf: mpf
    mode: str

    def to_dict(self, digits: int = 12) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "matrix": [[fmt(x, digits) for x in row] for row in self.matrix],
            "inverse": [[fmt(x, digits) for x in row] for row in self.inverse] if self.inverse else None,
            "inf_norm_of_inverse": fmt(self.inf_norm_of_inverse, digits) if self.inverse else None,
            "determinant": fmt(self.determinant, digits),
            "asymmetry_inf": fmt(self.asymmetry_inf, 5),
        }


@dataclass
class NewtonTrace:
    """Per-iteration deviations of a Newton run."""

    deviations: List[mpf] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return max(len(self.deviations) - 1, 0)


class StepSchedule(BaseModel):
    """Multiplicative cooling with restarts on stagnation."""

    initial_step: float = Field(0.02, gt=0)
    cooling: float = Field(0.95, gt=0, lt=1)
    rejection_streak: int = Field(50, ge=1)
    stagnation_restart: int = Field(5000, ge=1)
    min_step: float = Field(1e-12, gt=0)
    ellipsoid_step: float = Field(0.05, ge=0)


class SearchSpec(BaseModel):
    """Parameters of one hill-climbing search."""

    triangulation: str = "best8"
    symmetry: Optional[Tuple[int, ...]] = (4, 3, 6, 1, 0, 7, 2, 5)
    face_number_target: int = Field(6, ge=0, le=12)
    dihedral_floor: float = Field(1e-5, gt=0)
    min_angle_floor: float = Field(1e-5, gt=0)
    seed: int = 0
    max_iterations: int = Field(100_000, ge=0)
    max_attempts: int = Field(200_000, ge=1)
    step_schedule: StepSchedule = Field(default_factory=StepSchedule)

    @field_validator("symmetry", mode="before")
    @classmethod
    def _parse_symmetry(cls, value: Any) -> Any:
        if value is None or value == "" or value == "none":
            return None
        if isinstance(value, str):
            return tuple(int(x) for x in value.replace(",", " ").split())
        return value

    @model_validator(mode="after")
    def _symmetry_fits_triangulation(self) -> "SearchSpec":
        from papertorus.combinatorics.triangulations import triangulation_by_name

        n = triangulation_by_name(self.triangulation).vertex_count
        if self.symmetry is not None:
            if len(self.symmetry) != n:
                raise ValueError(
                    f"symmetry has {len(self.symmetry)} entries, {self.triangulation} has {n} vertices"
                )
            if sorted(self.symmetry) != list(range(n)):
                raise ValueError(f"symmetry {self.symmetry} is not a permutation of 0..{n - 1}")
        return self


class TraceRow(BaseModel):
    """One accepted hill-climbing iterate."""

    iteration: int
    max_deviation: float
    face_number: int
    min_dihedral: float
