"""Face angles, cone angles and the auxiliary angle quantities of a configuration.

The mpmath functions run at the configuration's precision; the ``*_np``
variants are float64 twins used inside the search loop.
"""

from typing import Dict, Sequence, Tuple

import mpmath
import numpy as np
from mpmath import mpf

from papertorus.core.errors import DegenerateTriangle
from papertorus.core.models import Configuration, FlatnessReport
from papertorus.core.models.geometry import Point3
from papertorus.core.models.triangulation import Edge, Face

# mpmath vector helpers (tuples of mpf)


def sub(a: Point3, b: Point3) -> Point3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def dot(a: Point3, b: Point3) -> mpf:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Point3, b: Point3) -> Point3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm(a: Point3) -> mpf:
    return mpmath.sqrt(dot(a, a))


def degeneracy_threshold() -> mpf:
    return mpf(10) ** (-(mpmath.mp.dps // 2))


def triangle_angle(p0: Point3, p1: Point3, p2: Point3) -> mpf:
    """
    Angle at ``p0`` of the triangle (p0, p1, p2), in [0, pi].

    Computed as arccos(V1.V2 / sqrt(|V1|^2 |V2|^2)) with V1 = p1 - p0 and
    V2 = p2 - p0 at the current mpmath precision.

    Raises:
        DegenerateTriangle: an edge vector shorter than 10^(-dps/2)
    """
    v1 = sub(p1, p0)
    v2 = sub(p2, p0)
    n1 = dot(v1, v1)
    n2 = dot(v2, v2)
    tiny = degeneracy_threshold()
    if n1 < tiny**2 or n2 < tiny**2:
        raise DegenerateTriangle(f"edge vector of norm below {mpmath.nstr(tiny, 3)}")
    u = dot(v1, v2) / mpmath.sqrt(n1 * n2)
    if u > 1:
        u = mpf(1)
    elif u < -1:
        u = mpf(-1)
    return mpmath.acos(u)


def face_corner_angles(c: Configuration) -> Tuple[Tuple[mpf, mpf, mpf], ...]:
    """Per face, the angles at its three corners in face order."""
    out = []
    with mpmath.workdps(c.precision):
        for a, b, d in c.triangulation.faces:
            pa, pb, pd = c.point(a), c.point(b), c.point(d)
            out.append((triangle_angle(pa, pb, pd), triangle_angle(pb, pd, pa), triangle_angle(pd, pa, pb)))
    return tuple(out)


def cone_angles(c: Configuration) -> FlatnessReport:
    """
    Cone angle at every vertex and the worst deviation from 2*pi.

    Sums run over faces in canonical face order so results do not depend on
    evaluation order.
    """
    corners = face_corner_angles(c)
    with mpmath.workdps(c.precision):
        totals = [mpf(0)] * c.triangulation.vertex_count
        for face, angles in zip(c.triangulation.faces, corners):
            for v, theta in zip(face, angles):
                totals[v] += theta
        two_pi = 2 * mpmath.pi
        worst = max(abs(theta - two_pi) for theta in totals)
    return FlatnessReport(cone_angles=tuple(totals), max_deviation=worst)


def angle_sum_defect(c: Configuration) -> mpf:
    """|sum of cone angles - pi * F|, a combinatorial identity check."""
    report = cone_angles(c)
    with mpmath.workdps(c.precision):
        return abs(mpmath.fsum(report.cone_angles) - mpmath.pi * len(c.triangulation.faces))


def min_face_angle(c: Configuration) -> mpf:
    return min(min(angles) for angles in face_corner_angles(c))


def _dihedral(pa: Point3, pb: Point3, pc: Point3, pd: Point3) -> mpf:
    """Angle at edge ab between the half-planes towards c and d."""
    axis = sub(pb, pa)
    axis_sq = dot(axis, axis)
    u = sub(pc, pa)
    w = sub(pd, pa)
    u_perp = sub(u, tuple(x * dot(u, axis) / axis_sq for x in axis))  # type: ignore[arg-type]
    w_perp = sub(w, tuple(x * dot(w, axis) / axis_sq for x in axis))  # type: ignore[arg-type]
    zero = (mpf(0), mpf(0), mpf(0))
    return triangle_angle(zero, u_perp, w_perp)


def dihedral_angles(c: Configuration) -> Dict[Edge, mpf]:
    """Dihedral angle at every edge; pi means the two faces are coplanar and flat."""
    t = c.triangulation
    out: Dict[Edge, mpf] = {}
    with mpmath.workdps(c.precision):
        for e in t.edges:
            f1, f2 = (t.faces[i] for i in t.edge_faces[e])
            apex1 = next(v for v in f1 if v not in e)
            apex2 = next(v for v in f2 if v not in e)
            out[e] = _dihedral(c.point(e[0]), c.point(e[1]), c.point(apex1), c.point(apex2))
    return out


def surface_area(c: Configuration) -> mpf:
    with mpmath.workdps(c.precision):
        return mpmath.fsum(
            norm(cross(sub(pb, pa), sub(pc, pa))) / 2
            for pa, pb, pc in (c.face_points(i) for i in range(len(c.triangulation.faces)))
        )


def is_nondegenerate(c: Configuration) -> bool:
    """Every face has edge vectors with a cross product of positive norm."""
    with mpmath.workdps(c.precision):
        tiny = degeneracy_threshold()
        for i in range(len(c.triangulation.faces)):
            pa, pb, pc = c.face_points(i)
            if norm(cross(sub(pb, pa), sub(pc, pa))) < tiny:
                return False
    return True


# float64 twins


def _corner_angles_np(points: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """(F, 3) array of corner angles, column k at vertex faces[:, k]."""
    tri = points[faces]
    out = np.empty(faces.shape, dtype=float)
    for k in range(3):
        p0 = tri[:, k]
        v1 = tri[:, (k + 1) % 3] - p0
        v2 = tri[:, (k + 2) % 3] - p0
        cosine = np.einsum("ij,ij->i", v1, v2) / (
            np.linalg.norm(v1, axis=1) * np.linalg.norm(v2, axis=1)
        )
        out[:, k] = np.arccos(np.clip(cosine, -1.0, 1.0))
    return out


def cone_angles_np(points: np.ndarray, faces: np.ndarray) -> np.ndarray:
    corners = _corner_angles_np(points, faces)
    totals = np.zeros(len(points))
    for k in range(3):
        np.add.at(totals, faces[:, k], corners[:, k])
    return totals


def min_face_angle_np(points: np.ndarray, faces: np.ndarray) -> float:
    return float(_corner_angles_np(points, faces).min())


def edge_quads(faces: Sequence[Face], edges: Sequence[Edge], edge_faces: Dict[Edge, Tuple[int, ...]]) -> np.ndarray:
    """Rows (a, b, c, d): edge ab with opposite apexes c and d."""
    rows = []
    for e in edges:
        f1, f2 = (faces[i] for i in edge_faces[e])
        rows.append(
            (e[0], e[1], next(v for v in f1 if v not in e), next(v for v in f2 if v not in e))
        )
    return np.array(rows, dtype=int)


def dihedral_angles_np(points: np.ndarray, quads: np.ndarray) -> np.ndarray:
    a, b, c, d = (points[quads[:, k]] for k in range(4))
    axis = b - a
    axis /= np.linalg.norm(axis, axis=1)[:, None]
    u = c - a
    w = d - a
    u -= np.einsum("ij,ij->i", u, axis)[:, None] * axis
    w -= np.einsum("ij,ij->i", w, axis)[:, None] * axis
    cosine = np.einsum("ij,ij->i", u, w) / (np.linalg.norm(u, axis=1) * np.linalg.norm(w, axis=1))
    return np.arccos(np.clip(cosine, -1.0, 1.0))
