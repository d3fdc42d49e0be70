"""The angle map F(z0, z1, z2) = (theta_0, theta_1, theta_2) and its Jacobian."""

from typing import List, Literal, Optional, Tuple

import mpmath
from mpmath import mpf

from papertorus.core.errors import SingularMatrix
from papertorus.core.models import AngleMapSample, Configuration, JacobianReport, PupTentParams
from papertorus.geometry.angles import cone_angles, dot, sub
from papertorus.geometry.puptent import PARAMETER_VERTICES, build_pup_tent
from papertorus.logging import get_logger

logger = get_logger(__name__)

JacobianMode = Literal["analytic", "central"]

TRACKED_VERTICES = (0, 1, 2)


def angle_map_full(c: Configuration) -> Tuple[mpf, ...]:
    """Cone angles at all vertices."""
    return cone_angles(c).cone_angles


def angle_map(p: PupTentParams, precision: int = 64) -> AngleMapSample:
    """Cone angles of T(p) at vertices 0, 1 and 2."""
    full = angle_map_full(build_pup_tent(p, precision))
    return AngleMapSample(params=p, values=tuple(full[v] for v in TRACKED_VERTICES))  # type: ignore[arg-type]


def _corner_height_gradient(
    c: Configuration, apex: int, a: int, b: int
) -> dict:
    """d(angle at apex of (apex, a, b)) / d(z of each of the three vertices)."""
    pk, pa, pb = c.point(apex), c.point(a), c.point(b)
    v1 = sub(pa, pk)
    v2 = sub(pb, pk)
    n1 = dot(v1, v1)
    n2 = dot(v2, v2)
    root = mpmath.sqrt(n1 * n2)
    u = dot(v1, v2) / root
    scale = -1 / mpmath.sqrt(1 - u * u)
    grads = {}
    # (dV1_z, dV2_z) when moving the z-coordinate of each vertex up by one
    for vertex, d1, d2 in ((apex, -1, -1), (a, 1, 0), (b, 0, 1)):
        d_dot = d1 * v2[2] + d2 * v1[2]
        d_n1 = 2 * d1 * v1[2]
        d_n2 = 2 * d2 * v2[2]
        du = d_dot / root - u * (d_n1 / n1 + d_n2 / n2) / 2
        grads[vertex] = grads.get(vertex, mpf(0)) + scale * du
    return grads


def _analytic(p: PupTentParams, precision: int) -> List[List[mpf]]:
    c = build_pup_tent(p, precision)
    rows = {v: [mpf(0)] * 3 for v in TRACKED_VERTICES}
    column_of = {w: i for i, group in enumerate(PARAMETER_VERTICES) for w in group}
    for face in c.triangulation.faces:
        for k in range(3):
            apex = face[k]
            if apex not in rows:
                continue
            grads = _corner_height_gradient(c, apex, face[(k + 1) % 3], face[(k + 2) % 3])
            for vertex, g in grads.items():
                col = column_of.get(vertex)
                if col is not None:
                    rows[apex][col] += g
    return [rows[v] for v in TRACKED_VERTICES]


def _central(p: PupTentParams, precision: int) -> List[List[mpf]]:
    h = mpf(10) ** (-(precision // 2))
    base = list(p.as_tuple())
    columns = []
    for i in range(3):
        up = list(base)
        down = list(base)
        up[i] += h
        down[i] -= h
        f_up = angle_map(PupTentParams(*up), precision).values
        f_down = angle_map(PupTentParams(*down), precision).values
        columns.append([(f_up[j] - f_down[j]) / (2 * h) for j in range(3)])
    return [[columns[i][j] for i in range(3)] for j in range(3)]


def jacobian(
    p: PupTentParams, precision: int = 64, mode: JacobianMode = "analytic"
) -> JacobianReport:
    """
    dF at ``p`` with its inverse.

    Each column differentiates in one height; moving z0 moves vertices 0 and 4
    together, z1 moves 1 and 3, z2 moves 2 and 6.

    Raises:
        SingularMatrix: |det dF| below 10^(-precision/2)
    """
    with mpmath.workdps(precision):
        rows = _analytic(p, precision) if mode == "analytic" else _central(p, precision)
        matrix = mpmath.matrix(rows)
        det = mpmath.det(matrix)
        asymmetry = max(abs(matrix[i, j] - matrix[j, i]) for i in range(3) for j in range(3))
        inverse: Optional[Tuple] = None
        inverse_norm: Optional[mpf] = None
        if abs(det) < mpf(10) ** (-(precision // 2)):
            raise SingularMatrix(f"|det dF| = {mpmath.nstr(abs(det), 5)} at {p.to_dict(12)}")
        inv = matrix**-1
        inverse = tuple(tuple(inv[i, j] for j in range(3)) for i in range(3))
        inverse_norm = max(sum(abs(inv[i, j]) for j in range(3)) for i in range(3))
        as_tuple = tuple(tuple(matrix[i, j] for j in range(3)) for i in range(3))
    logger.debug(
        "Jacobian evaluated",
        extra={"event": "jacobian.done", "mode": mode, "det": mpmath.nstr(det, 8)},
    )
    return JacobianReport(
        matrix=as_tuple,  # type: ignore[arg-type]
        inverse=inverse,
        inf_norm_of_inverse=inverse_norm,
        determinant=det,
        asymmetry_inf=asymmetry,
        mode=mode,
    )


def second_derivatives(
    p: PupTentParams, precision: int = 64, vertex: int = 0
) -> List[List[mpf]]:
    """Central second differences of theta_vertex in (z0, z1, z2)."""
    with mpmath.workdps(precision):
        h = mpf(10) ** (-(precision // 4))
        base = list(p.as_tuple())

        def theta(zs: List[mpf]) -> mpf:
            return angle_map_full(build_pup_tent(PupTentParams(*zs), precision))[vertex]

        out = [[mpf(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                total = mpf(0)
                for si, sj, sign in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
                    z = list(base)
                    z[i] += si * h
                    z[j] += sj * h
                    total += sign * theta(z)
                out[i][j] = total / (4 * h * h)
        return out
