"""Stochastic hill climbing towards flat embedded tori.

The search moves points on an ellipsoid (so every vertex stays on the hull),
keeps the face number from rising above the target, keeps dihedral and face
angles above floors, and accepts only moves that lower the flatness
objective. Everything runs in float64; the result is lifted to a
Configuration at the requested precision.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from papertorus.combinatorics.triangulations import triangulation_by_name
from papertorus.core.errors import SamplingExhausted
from papertorus.core.models import (
    Configuration,
    FlatnessReport,
    SearchSpec,
    TraceRow,
    Triangulation,
)
from papertorus.geometry.angles import (
    cone_angles,
    cone_angles_np,
    dihedral_angles_np,
    edge_quads,
    min_face_angle_np,
)
from papertorus.geometry.hull import face_number_np
from papertorus.geometry.intersection import is_embedded_np
from papertorus.logging import get_logger, with_context

logger = get_logger(__name__)

# (x, y, z) -> (-x, -y, z)
ROTATION = np.diag([-1.0, -1.0, 1.0])


@dataclass
class SearchResult:
    """Best configuration of one chain plus its accepted-move trace."""

    seed: int
    configuration: Configuration
    report: FlatnessReport
    max_deviation: float
    face_number: int
    iterations: int
    trace: List[TraceRow] = field(default_factory=list)


def _free_vertices(symmetry: Optional[Sequence[int]], n: int) -> List[int]:
    if symmetry is None:
        return list(range(n))
    return [v for v in range(n) if v <= symmetry[v]]


def _symmetrize(points: np.ndarray, symmetry: Optional[Sequence[int]]) -> np.ndarray:
    """Overwrite each non-free vertex with the rotated copy of its partner."""
    if symmetry is None:
        return points
    out = points.copy()
    for v, w in enumerate(symmetry):
        if v < w:
            out[w] = ROTATION @ out[v]
        elif v == w:
            out[v, :2] = 0.0
    return out


def _objective(points: np.ndarray, faces: np.ndarray) -> Tuple[float, float]:
    dev = cone_angles_np(points, faces) - 2 * np.pi
    return float(np.abs(dev).max()), float((dev**2).sum())


def random_embedded_points(
    spec: SearchSpec, t: Triangulation, rng: np.random.Generator
) -> np.ndarray:
    """Rejection-sample points on the unit sphere until the float embedding test passes."""
    free = _free_vertices(spec.symmetry, t.vertex_count)
    for attempt in range(1, spec.max_attempts + 1):
        points = np.zeros((t.vertex_count, 3))
        raw = rng.standard_normal((len(free), 3))
        points[free] = raw / np.linalg.norm(raw, axis=1)[:, None]
        points = _symmetrize(points, spec.symmetry)
        if is_embedded_np(points, t):
            logger.debug(
                "Random embedded configuration found",
                extra={"event": "search.sample.hit", "attempts": attempt},
            )
            return points
    raise SamplingExhausted(f"no embedded configuration in {spec.max_attempts} attempts")


def random_embedded_config(spec: SearchSpec, precision: int = 64) -> Configuration:
    """
    Seeded rejection sampling of an embedded configuration on the unit sphere.

    Raises:
        SamplingExhausted: ``spec.max_attempts`` samples all failed
    """
    t = triangulation_by_name(spec.triangulation)
    rng = np.random.default_rng(spec.seed)
    points = random_embedded_points(spec, t, rng)
    return Configuration.from_values(t, points.tolist(), precision)


class Ellipsoid:
    """Surface x^T A x = 1 with A = Rz(phi) diag(exp(log_axes)) Rz(phi)^T.

    Rotations about z commute with (x, y, z) -> (-x, -y, z), so symmetric
    point sets stay symmetric after radial projection.
    """

    def __init__(self, log_axes: np.ndarray, phi: float):
        self.log_axes = log_axes
        self.phi = phi

    @classmethod
    def sphere(cls) -> "Ellipsoid":
        return cls(np.zeros(3), 0.0)

    @property
    def matrix(self) -> np.ndarray:
        c, s = np.cos(self.phi), np.sin(self.phi)
        rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        return rot @ np.diag(np.exp(self.log_axes)) @ rot.T

    def project(self, points: np.ndarray) -> np.ndarray:
        a = self.matrix
        scale = np.sqrt(np.einsum("ij,jk,ik->i", points, a, points))
        return points / scale[:, None]

    def perturbed(self, rng: np.random.Generator, step: float) -> "Ellipsoid":
        return Ellipsoid(
            self.log_axes + step * rng.standard_normal(3),
            self.phi + step * rng.standard_normal(),
        )


class HillClimber:
    """One seeded chain of the constrained hill climb."""

    def __init__(self, spec: SearchSpec):
        self.spec = spec
        self.t = triangulation_by_name(spec.triangulation)
        self.faces = np.array(self.t.faces, dtype=int)
        self.quads = edge_quads(self.t.faces, self.t.edges, self.t.edge_faces)
        self.free = _free_vertices(spec.symmetry, self.t.vertex_count)
        self.rng = np.random.default_rng(spec.seed)

    def admissible(self, points: np.ndarray, face_cap: int) -> Optional[Tuple[int, float]]:
        """(face number, min dihedral) when all constraints hold, else None."""
        if dihedral_angles_np(points, self.quads).min() < self.spec.dihedral_floor:
            return None
        if min_face_angle_np(points, self.faces) < self.spec.min_angle_floor:
            return None
        face_number, all_on_hull = face_number_np(points, self.t)
        if not all_on_hull or face_number > face_cap:
            return None
        if not is_embedded_np(points, self.t):
            return None
        return face_number, float(dihedral_angles_np(points, self.quads).min())

    def propose(
        self, points: np.ndarray, ellipsoid: Ellipsoid, step: float
    ) -> Tuple[np.ndarray, Ellipsoid]:
        schedule = self.spec.step_schedule
        if schedule.ellipsoid_step > 0 and self.rng.random() < 0.2:
            ellipsoid = ellipsoid.perturbed(self.rng, step * schedule.ellipsoid_step / schedule.initial_step)
            moved = points
        else:
            moved = points.copy()
            v = self.free[int(self.rng.integers(len(self.free)))]
            moved[v] = points[v] + step * self.rng.standard_normal(3)
        moved = _symmetrize(ellipsoid.project(moved), self.spec.symmetry)
        return moved, ellipsoid

    def run(self, precision: int = 64) -> SearchResult:
        spec = self.spec
        schedule = spec.step_schedule
        log = with_context(logger, seed=spec.seed)
        points = random_embedded_points(spec, self.t, self.rng)
        ellipsoid = Ellipsoid.sphere()
        face_number, _ = face_number_np(points, self.t)
        best = _objective(points, self.faces)
        min_dihedral = float(dihedral_angles_np(points, self.quads).min())
        trace = [TraceRow(iteration=0, max_deviation=best[0], face_number=face_number, min_dihedral=min_dihedral)]

        step = schedule.initial_step
        rejections = 0
        since_improvement = 0
        iteration = 0
        for iteration in range(1, spec.max_iterations + 1):
            candidate, cand_ellipsoid = self.propose(points, ellipsoid, step)
            verdict = self.admissible(candidate, max(spec.face_number_target, face_number))
            score = _objective(candidate, self.faces) if verdict else None
            if verdict and score is not None and score < best:
                points, ellipsoid, best = candidate, cand_ellipsoid, score
                face_number, min_dihedral = verdict
                trace.append(
                    TraceRow(
                        iteration=iteration,
                        max_deviation=best[0],
                        face_number=face_number,
                        min_dihedral=min_dihedral,
                    )
                )
                rejections = 0
                since_improvement = 0
                continue
            rejections += 1
            since_improvement += 1
            if rejections >= schedule.rejection_streak:
                step *= schedule.cooling
                rejections = 0
            if since_improvement >= schedule.stagnation_restart or step < schedule.min_step:
                step = schedule.initial_step
                since_improvement = 0
                log.debug("Step size restarted", extra={"event": "search.restart", "iteration": iteration})

        configuration = Configuration.from_values(self.t, points.tolist(), precision)
        log.info(
            "Hill climb finished",
            extra={
                "event": "search.chain.done",
                "max_deviation": best[0],
                "face_number": face_number,
                "accepted": len(trace) - 1,
            },
        )
        return SearchResult(
            seed=spec.seed,
            configuration=configuration,
            report=cone_angles(configuration),
            max_deviation=best[0],
            face_number=face_number,
            iterations=iteration,
            trace=trace,
        )


def hill_climb(spec: SearchSpec, precision: int = 64) -> SearchResult:
    """Run one chain; the trace of max_deviation is non-increasing."""
    return HillClimber(spec).run(precision)


def run_chains(
    spec: SearchSpec, chains: int = 8, threads: int = 1, precision: int = 64
) -> Tuple[SearchResult, List[SearchResult]]:
    """
    Independent chains seeded spec.seed, spec.seed + 1, ...

    Returns:
        (best chain by (max_deviation, seed), all chains in seed order)
    """
    specs = [spec.model_copy(update={"seed": spec.seed + i}) for i in range(chains)]
    if threads <= 1:
        results = [hill_climb(s, precision) for s in specs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(lambda s: hill_climb(s, precision), specs))
    best = min(results, key=lambda r: (r.max_deviation, r.seed))
    return best, results
