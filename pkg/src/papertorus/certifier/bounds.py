"""Crude second-derivative bound for the angle map.

Every second partial of a cone angle in the heights is a sum of at most 48
"friendly" terms, each the second derivative of the angle between two edge
vectors V1, V2 of a face in the z-components w1, w2 of those vectors. The
squares of these derivatives are the rational functions g11, g12, g22; the
bound follows from windows on |V1|, |V2| and |V1 x V2|.
"""

from typing import Iterator, List, Tuple

import mpmath
from mpmath import mpf

from papertorus.core.errors import BoundViolated
from papertorus.core.models import Configuration, CrudeBoundReport, VectorBound
from papertorus.core.models.geometry import Point3
from papertorus.geometry.angles import cross, dot, norm, sub
from papertorus.logging import get_logger

logger = get_logger(__name__)

VECTOR_WINDOW = (0.48, 2.4)
CROSS_WINDOW = (0.85, 2.4)
SQUARED_WINDOW = (0.1, 10.0)
DEFAULT_SLACK = 1e-3
G_LIMIT = 1e14
G12_LIMIT = 10.0
N_LIMIT = 10**3.5
D_FLOOR = 1e-7
FRIENDLY_TERMS = 48
FRIENDLY_TERM_BOUND = 1e7
SECOND_DERIVATIVE_BOUND = 1e9

RelevantPair = Tuple[int, int, Tuple[int, int], Point3, Point3]


def relevant_vector_pairs(c: Configuration) -> Iterator[RelevantPair]:
    """(face, apex, (i, j), V1, V2) with V1 = P_i - P_apex, V2 = P_j - P_apex; 6 per face."""
    for idx, face in enumerate(c.triangulation.faces):
        for k in range(3):
            apex = face[k]
            others = (face[(k + 1) % 3], face[(k + 2) % 3])
            for i, j in (others, others[::-1]):
                yield idx, apex, (i, j), sub(c.point(i), c.point(apex)), sub(c.point(j), c.point(apex))


def pair_angle(v1: Point3, v2: Point3) -> mpf:
    return mpmath.acos(dot(v1, v2) / mpmath.sqrt(dot(v1, v1) * dot(v2, v2)))


def g_terms(v1: Point3, v2: Point3) -> Tuple[mpf, mpf, mpf, mpf]:
    """
    (g11, g12, N, D) for one relevant pair.

    g12 = |W1 x W2|^4 / |V1 x V2|^6 and g11 = N^2 / D with
    D = |V1|^8 |V1 x V2|^6, W_k the XY projection of V_k and w_k its height.
    """
    w1, w2 = v1[2], v2[2]
    a_w = v1[0] ** 2 + v1[1] ** 2
    b_w = v2[0] ** 2 + v2[1] ** 2
    p_w = v1[0] * v2[0] + v1[1] * v2[1]
    q_w = a_w * b_w - p_w**2
    t1 = 3 * a_w * q_w
    t2 = 2 * a_w**2
    t3 = 3 * p_w**2 + 3 * a_w * b_w
    t4 = -6 * a_w * p_w
    t5 = -2 * p_w * b_w
    t6 = -q_w * p_w
    t7 = a_w * q_w * p_w
    n = (
        t1 * w1 * w2
        + t2 * w1 * w2**3
        + t3 * w1**3 * w2
        + t4 * w1**2 * w2**2
        + t5 * w1**4
        + t6 * w1**2
        + t7
    )
    x = dot(cross(v1, v2), cross(v1, v2))
    d = dot(v1, v1) ** 4 * x**3
    return n**2 / d, q_w**2 / x**3, n, d


def vector_bounds_check(c: Configuration, slack: float = DEFAULT_SLACK) -> CrudeBoundReport:
    """
    Check the edge-vector windows at the center with ``slack`` to spare.

    Raises:
        BoundViolated: a norm outside its shrunken window
    """
    bounds: List[VectorBound] = []
    with mpmath.workdps(c.precision):
        for face, apex, order, v1, v2 in relevant_vector_pairs(c):
            n1, n2 = float(norm(v1)), float(norm(v2))
            nx = float(norm(cross(v1, v2)))
            pair = (face, apex, *order)
            for value in (n1, n2):
                if not VECTOR_WINDOW[0] + slack <= value <= VECTOR_WINDOW[1] - slack:
                    raise BoundViolated(f"|V| = {value:.6f} outside {VECTOR_WINDOW}", pair=pair, value=value)
            if not CROSS_WINDOW[0] + slack <= nx <= CROSS_WINDOW[1] - slack:
                raise BoundViolated(f"|V1 x V2| = {nx:.6f} outside {CROSS_WINDOW}", pair=pair, value=nx)
            for value in (n1**2, n2**2, nx**2):
                if not SQUARED_WINDOW[0] < value < SQUARED_WINDOW[1]:
                    raise BoundViolated(f"squared norm {value:.6f} outside {SQUARED_WINDOW}", pair=pair, value=value)
            bounds.append(
                VectorBound(face=face, apex=apex, order=order, v1_norm=n1, v2_norm=n2, cross_norm=nx)
            )
    return CrudeBoundReport(
        vector_bounds=bounds,
        min_vector_norm=min(min(b.v1_norm, b.v2_norm) for b in bounds),
        max_vector_norm=max(max(b.v1_norm, b.v2_norm) for b in bounds),
        min_cross_norm=min(b.cross_norm for b in bounds),
        max_cross_norm=max(b.cross_norm for b in bounds),
        slack=slack,
    )


def eval_g_bounds(c: Configuration, report: CrudeBoundReport = None) -> CrudeBoundReport:  # type: ignore[assignment]
    """
    Evaluate g11, g12 (and g22 through the swapped pairs) at every relevant pair.

    Raises:
        BoundViolated: g12 >= 10, g11 >= 1e14, |N| >= 10^3.5 or D <= 1e-7
    """
    report = report or CrudeBoundReport()
    g11_max = g12_max = n_max = 0.0
    d_min = float("inf")
    with mpmath.workdps(c.precision):
        for face, apex, order, v1, v2 in relevant_vector_pairs(c):
            g11, g12, n, d = (float(x) for x in g_terms(v1, v2))
            pair = (face, apex, *order)
            if g12 >= G12_LIMIT:
                raise BoundViolated(f"g12 = {g12:.4g} not below {G12_LIMIT}", pair=pair, value=g12)
            if abs(n) >= N_LIMIT or d <= D_FLOOR:
                raise BoundViolated(f"N = {n:.4g}, D = {d:.4g} outside the Case 2 window", pair=pair, value=(n, d))
            if g11 >= G_LIMIT:
                raise BoundViolated(f"g11 = {g11:.4g} not below {G_LIMIT:.0e}", pair=pair, value=g11)
            g11_max = max(g11_max, g11)
            g12_max = max(g12_max, g12)
            n_max = max(n_max, abs(n))
            d_min = min(d_min, d)
    return report.model_copy(update={"g11_max": g11_max, "g12_max": g12_max, "n_max": n_max, "d_min": d_min})


def crude_bound_certificate(c: Configuration, slack: float = DEFAULT_SLACK) -> CrudeBoundReport:
    """
    Vector windows, g bounds and the friendly-term count combined.

    Each friendly term is below sqrt(1e14) = 1e7 and each second partial of a
    cone angle is a sum of at most 48 of them, hence below 1e9.
    """
    report = eval_g_bounds(c, vector_bounds_check(c, slack))
    if FRIENDLY_TERMS * FRIENDLY_TERM_BOUND >= SECOND_DERIVATIVE_BOUND:
        raise BoundViolated("friendly-term count times term bound exceeds the second-derivative bound")
    logger.info(
        "Crude bound certified",
        extra={
            "event": "crude_bound.done",
            "g11_max": report.g11_max,
            "g12_max": report.g12_max,
            "min_cross_norm": report.min_cross_norm,
            "max_cross_norm": report.max_cross_norm,
        },
    )
    return report.model_copy(
        update={
            "friendly_term_count_bound": FRIENDLY_TERMS,
            "friendly_term_bound": FRIENDLY_TERM_BOUND,
            "second_derivative_bound": SECOND_DERIVATIVE_BOUND,
        }
    )
