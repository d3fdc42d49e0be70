"""Core domain models (re-export schemas)."""

from papertorus.core.models.certificates import (
    CrudeBoundReport,
    ExistenceCertificate,
    ScaledIntegerConfig,
    SeparationCertificate,
    VectorBound,
)
from papertorus.core.models.geometry import (
    Configuration,
    Development,
    FlatnessReport,
    HullReport,
    Plane,
    PupTentParams,
    SliceResult,
)
from papertorus.core.models.manifest import RunManifest
from papertorus.core.models.solver import (
    AngleMapSample,
    JacobianReport,
    NewtonTrace,
    SearchSpec,
    StepSchedule,
    TraceRow,
)
from papertorus.core.models.triangulation import (
    EdgePattern,
    HullLemmaReport,
    PatternOutcome,
    TriangleClassification,
    Triangulation,
    edge,
)

__all__ = [
    "AngleMapSample",
    "Configuration",
    "CrudeBoundReport",
    "Development",
    "EdgePattern",
    "ExistenceCertificate",
    "FlatnessReport",
    "HullLemmaReport",
    "HullReport",
    "JacobianReport",
    "NewtonTrace",
    "PatternOutcome",
    "Plane",
    "PupTentParams",
    "RunManifest",
    "ScaledIntegerConfig",
    "SearchSpec",
    "SeparationCertificate",
    "SliceResult",
    "StepSchedule",
    "TraceRow",
    "TriangleClassification",
    "Triangulation",
    "VectorBound",
    "edge",
]
