"""Planar slices of a configuration."""

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpf

from papertorus.core.errors import ChainingFailure
from papertorus.core.models import Configuration, Plane, SliceResult
from papertorus.core.models.geometry import Point2, Point3
from papertorus.core.models.triangulation import Edge, face_edges
from papertorus.geometry.angles import cross, dot, norm, sub
from papertorus.logging import get_logger

logger = get_logger(__name__)

MAX_PERTURBATIONS = 8


def make_plane(point: Sequence[object], normal: Sequence[object], precision: int = 64) -> Plane:
    """Plane with the normal scaled to unit length."""
    with mpmath.workdps(precision):
        p = tuple(mpf(x) for x in point)
        n = tuple(mpf(x) for x in normal)
        length = norm(n)  # type: ignore[arg-type]
        if length == 0:
            raise ValueError("plane normal must be nonzero")
        return Plane(point=p, normal=tuple(x / length for x in n))  # type: ignore[arg-type]


def plane_basis(normal: Point3) -> Tuple[Point3, Point3]:
    """Orthonormal (u, v) with u x v = normal; the XZ plane maps to (x, z)."""
    helper = (mpf(1), mpf(0), mpf(0)) if abs(normal[0]) < mpf("0.9") else (mpf(0), mpf(1), mpf(0))
    along = dot(helper, normal)
    u = sub(helper, tuple(along * x for x in normal))  # type: ignore[arg-type]
    u_len = norm(u)
    u = tuple(x / u_len for x in u)  # type: ignore[assignment]
    v = cross(u, normal)
    return u, v


def _crossings(
    c: Configuration, plane: Plane, tol: mpf
) -> Optional[Dict[Edge, Point3]]:
    """Crossing point per sign-changing edge, or None when a vertex sits on the plane."""
    side = [dot(sub(p, plane.point), plane.normal) for p in c.coordinates]
    if any(abs(s) < tol for s in side):
        return None
    out: Dict[Edge, Point3] = {}
    for a, b in c.triangulation.edges:
        if (side[a] > 0) != (side[b] > 0):
            s = side[a] / (side[a] - side[b])
            pa, pb = c.point(a), c.point(b)
            out[(a, b)] = tuple(pa[k] + s * (pb[k] - pa[k]) for k in range(3))  # type: ignore[assignment]
    return out


def _chain(segments: List[Tuple[Edge, Edge]]) -> Tuple[List[List[Edge]], List[List[Edge]]]:
    """Link face segments sharing a crossed edge into loops and open chains."""
    neighbors: Dict[Edge, List[Edge]] = {}
    for e1, e2 in segments:
        neighbors.setdefault(e1, []).append(e2)
        neighbors.setdefault(e2, []).append(e1)
    seen = set()
    loops: List[List[Edge]] = []
    chains: List[List[Edge]] = []
    # open chains start at degree-1 nodes
    starts = sorted(n for n, nb in neighbors.items() if len(nb) == 1) + sorted(neighbors)
    for start in starts:
        if start in seen:
            continue
        path = [start]
        seen.add(start)
        prev: Optional[Edge] = None
        current = start
        closed = False
        while True:
            options = [n for n in neighbors[current] if n != prev]
            if not options:
                break
            nxt = options[0]
            if nxt == start:
                closed = True
                break
            if nxt in seen:
                break
            path.append(nxt)
            seen.add(nxt)
            prev, current = current, nxt
        (loops if closed else chains).append(path)
    return loops, chains


def slice_plane(c: Configuration, plane: Plane, strict: bool = True) -> SliceResult:
    """
    Intersect the configuration with a plane and chain the pieces into loops.

    Crossing points are keyed by the crossed edge so neighbouring faces share
    them exactly; consecutive endpoints are still checked to 10^(-dps/2).
    Planes through a vertex are shifted by 10^(-dps/2) along the normal.

    Raises:
        ChainingFailure: open chains remain and ``strict`` is set
    """
    with mpmath.workdps(c.precision):
        tol = mpf(10) ** (-(c.precision // 2))
        current = plane
        crossings = _crossings(c, current, tol)
        shifts = 0
        while crossings is None:
            shifts += 1
            if shifts > MAX_PERTURBATIONS:
                raise ChainingFailure("plane keeps passing through vertices after perturbation")
            current = Plane(
                point=tuple(current.point[k] + tol * current.normal[k] for k in range(3)),  # type: ignore[arg-type]
                normal=current.normal,
            )
            crossings = _crossings(c, current, tol)
        if shifts:
            logger.info(
                "Slice plane shifted off a vertex",
                extra={"event": "slice.perturbed", "shifts": shifts},
            )

        segments: List[Tuple[Edge, Edge]] = []
        for f in c.triangulation.faces:
            hit = [e for e in face_edges(f) if e in crossings]
            if len(hit) == 2:
                segments.append((hit[0], hit[1]))
            elif hit:
                raise ChainingFailure(f"face {f} crosses the plane at {len(hit)} edges")

        loops, chains = _chain(segments)
        for loop in loops:
            for e1, e2 in zip(loop, loop[1:] + loop[:1]):
                if norm(sub(crossings[e1], crossings[e2])) < tol:
                    raise ChainingFailure(f"crossings on {e1} and {e2} coincide")
        if chains and strict:
            raise ChainingFailure(f"{len(chains)} open chains remain after chaining")

        u, v = plane_basis(current.normal)

        def project(p: Point3) -> Point2:
            rel = sub(p, current.point)
            return (dot(rel, u), dot(rel, v))

        planar_loops = tuple(tuple(project(crossings[e]) for e in loop) for loop in loops)
        planar_chains = tuple(tuple(project(crossings[e]) for e in chain) for chain in chains)

    logger.debug(
        "Slice computed",
        extra={"event": "slice.done", "loops": len(planar_loops), "open_chains": len(planar_chains)},
    )
    return SliceResult(plane=current, loops=planar_loops, open_chains=planar_chains, basis=(u, v))


def _segments_cross(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool:
    def orient(a: Point2, b: Point2, c: Point2) -> float:
        return float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0)


def loops_are_simple_and_disjoint(result: SliceResult) -> bool:
    """No two non-adjacent loop segments cross, within or across loops."""
    segs = []
    for li, loop in enumerate(result.loops):
        n = len(loop)
        for i in range(n):
            segs.append((li, i, n, loop[i], loop[(i + 1) % n]))
    for (la, ia, na, a1, a2), (lb, ib, nb, b1, b2) in combinations(segs, 2):
        if la == lb and (abs(ia - ib) == 1 or abs(ia - ib) == na - 1):
            continue
        if _segments_cross(a1, a2, b1, b2):
            return False
    return True


def ray_crossings(loop: Sequence[Point2], origin: Point2, direction: Point2) -> int:
    """Number of loop segments crossed by the ray origin + t * direction, t > 0."""
    far = (origin[0] + 1e6 * float(direction[0]), origin[1] + 1e6 * float(direction[1]))
    count = 0
    for i in range(len(loop)):
        if _segments_cross(origin, far, loop[i], loop[(i + 1) % len(loop)]):
            count += 1
    return count
