"""Intrinsic development of a near-flat torus into the plane.

Faces are unfolded along a spanning tree of the dual graph. The primal edges
the tree does not cross form the cut graph; the two cut edges left over by a
spanning tree of the cut graph close the homology generators, and the rigid
motions gluing their two planar copies are the deck transformations.
"""

from collections import deque
from itertools import product
from typing import Dict, FrozenSet, List, Literal, Optional, Sequence, Set, Tuple

import mpmath
from mpmath import mpf

from papertorus.core.errors import NotFlatEnough
from papertorus.core.models import Configuration, Development
from papertorus.core.models.geometry import Point2
from papertorus.core.models.triangulation import Edge, edge, face_edges
from papertorus.geometry.angles import cone_angles, norm, sub
from papertorus.logging import get_logger

logger = get_logger(__name__)

FLATNESS_REQUIRED = mpf("1e-6")

Traversal = Literal["bfs", "dfs"]


def _third_point(pa: Point2, pb: Point2, l_ab: mpf, l_bc: mpf, l_ca: mpf) -> Point2:
    """Apex C of triangle ABC placed to the left of A -> B (law of cosines)."""
    along = (l_ab**2 + l_ca**2 - l_bc**2) / (2 * l_ab)
    height = mpmath.sqrt(max(l_ca**2 - along**2, mpf(0)))
    ux = (pb[0] - pa[0]) / l_ab
    uy = (pb[1] - pa[1]) / l_ab
    return (pa[0] + along * ux - height * uy, pa[1] + along * uy + height * ux)


def _dual_tree(c: Configuration, base: int, traversal: Traversal) -> List[Tuple[int, int, Edge]]:
    """Tree edges (parent, child, crossed primal edge) in visiting order."""
    t = c.triangulation
    visited = {base}
    order: List[Tuple[int, int, Edge]] = []
    frontier: deque = deque([base])
    while frontier:
        f = frontier.popleft() if traversal == "bfs" else frontier.pop()
        for e in face_edges(t.faces[f]):
            for g in t.edge_faces[e]:
                if g not in visited:
                    visited.add(g)
                    order.append((f, g, e))
                    frontier.append(g)
    return order


def _place_faces(
    c: Configuration, base: int, tree: Sequence[Tuple[int, int, Edge]]
) -> Dict[int, Dict[int, Point2]]:
    t = c.triangulation
    length = {e: norm(sub(c.point(e[0]), c.point(e[1]))) for e in t.edges}

    a, b, d = t.faces[base]
    l_ab = length[edge(a, b)]
    pa: Point2 = (mpf(0), mpf(0))
    pb: Point2 = (l_ab, mpf(0))
    placed = {base: {a: pa, b: pb, d: _third_point(pa, pb, l_ab, length[edge(b, d)], length[edge(d, a)])}}

    for parent, child, (u, w) in tree:
        face = t.faces[child]
        i = face.index(u)
        # rotate the child so the shared edge appears in its own orientation
        if face[(i + 1) % 3] == w:
            first, second = u, w
        else:
            first, second = w, u
        apex = next(v for v in face if v not in (u, w))
        p1 = placed[parent][first]
        p2 = placed[parent][second]
        placed[child] = {
            first: p1,
            second: p2,
            apex: _third_point(
                p1,
                p2,
                length[edge(first, second)],
                length[edge(second, apex)],
                length[edge(apex, first)],
            ),
        }
    return placed


def _generator_edges(c: Configuration, tree: Sequence[Tuple[int, int, Edge]]) -> List[Edge]:
    """Cut-graph edges outside a spanning tree of the cut graph."""
    t = c.triangulation
    crossed = {e for _, _, e in tree}
    cut = [e for e in t.edges if e not in crossed]
    parent = list(range(t.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    leftover = []
    for u, w in cut:
        ru, rw = find(u), find(w)
        if ru == rw:
            leftover.append((u, w))
        else:
            parent[ru] = rw
    return leftover


def _deck_motion(
    placed: Dict[int, Dict[int, Point2]], f: int, g: int, e: Edge
) -> Tuple[mpf, Point2]:
    """Rotation angle and translation carrying g's copy of ``e`` onto f's copy."""
    u, w = e
    fu, fw = placed[f][u], placed[f][w]
    gu, gw = placed[g][u], placed[g][w]
    angle_f = mpmath.atan2(fw[1] - fu[1], fw[0] - fu[0])
    angle_g = mpmath.atan2(gw[1] - gu[1], gw[0] - gu[0])
    rotation = angle_f - angle_g
    two_pi = 2 * mpmath.pi
    rotation = rotation - two_pi * mpmath.floor((rotation + mpmath.pi) / two_pi)
    cos_r, sin_r = mpmath.cos(rotation), mpmath.sin(rotation)
    moved = (cos_r * gu[0] - sin_r * gu[1], sin_r * gu[0] + cos_r * gu[1])
    return rotation, (fu[0] - moved[0], fu[1] - moved[1])


def develop(
    c: Configuration, base: int = 0, traversal: Traversal = "bfs", check_flatness: bool = True
) -> Development:
    """
    Unfold one fundamental domain of the torus into the plane.

    Args:
        c: Near-flat configuration
        base: Face placed first, with its first vertex at the origin
        traversal: Dual spanning tree order ("bfs" or "dfs")
        check_flatness: Enforce max cone-angle deviation <= 1e-6

    Returns:
        Development with vertex lifts, per-face positions, lattice and holonomy

    Raises:
        NotFlatEnough: the configuration is too far from flat to develop
    """
    with mpmath.workdps(c.precision):
        if check_flatness:
            deviation = cone_angles(c).max_deviation
            if deviation > FLATNESS_REQUIRED:
                raise NotFlatEnough(
                    f"max cone-angle deviation {mpmath.nstr(deviation, 5)} exceeds "
                    f"{mpmath.nstr(FLATNESS_REQUIRED, 2)}"
                )
        tree = _dual_tree(c, base, traversal)
        placed = _place_faces(c, base, tree)

        t = c.triangulation
        lifts: Dict[int, Point2] = {}
        for f in [base] + [child for _, child, _ in tree]:
            for v in t.faces[f]:
                lifts.setdefault(v, placed[f][v])

        generators = _generator_edges(c, tree)
        motions = []
        for e in generators:
            f, g = t.edge_faces[e]
            motions.append(_deck_motion(placed, f, g, e))

    lattice = tuple(m[1] for m in motions)
    holonomy = tuple(m[0] for m in motions)
    logger.debug(
        "Development computed",
        extra={
            "event": "development.done",
            "base_face": base,
            "traversal": traversal,
            "generators": [list(e) for e in generators],
            "holonomy": [mpmath.nstr(h, 5) for h in holonomy],
        },
    )
    return Development(
        base_face=base,
        vertex_lifts=tuple(lifts[v] for v in range(t.vertex_count)),
        face_positions=tuple(
            tuple(placed[i][v] for v in t.faces[i]) for i in range(len(t.faces))  # type: ignore[misc]
        ),
        lattice=lattice,  # type: ignore[arg-type]
        rotational_holonomy=holonomy,  # type: ignore[arg-type]
        generator_edges=tuple(generators),  # type: ignore[arg-type]
    )


def reduced_gram(l1: Point2, l2: Point2) -> Tuple[Tuple[mpf, mpf], Tuple[mpf, mpf]]:
    """
    Gram matrix of a Lagrange-reduced basis, off-diagonal made non-negative.

    Two bases of the same lattice (up to planar isometry) give the same matrix.
    """
    a = (mpf(l1[0]), mpf(l1[1]))
    b = (mpf(l2[0]), mpf(l2[1]))

    def dot2(p: Point2, q: Point2) -> mpf:
        return p[0] * q[0] + p[1] * q[1]

    for _ in range(1000):
        if dot2(a, a) > dot2(b, b):
            a, b = b, a
        m = mpmath.nint(dot2(a, b) / dot2(a, a))
        if m == 0:
            break
        b = (b[0] - m * a[0], b[1] - m * a[1])
    off = abs(dot2(a, b))
    return ((dot2(a, a), off), (off, dot2(b, b)))


def covolume(lattice: Tuple[Point2, Point2]) -> mpf:
    (ax, ay), (bx, by) = lattice
    return abs(ax * by - ay * bx)


def reconstruct_faces(
    points3d: Sequence[Sequence[mpf]],
    lifts2d: Sequence[Point2],
    lattice: Tuple[Point2, Point2],
    tol: mpf = mpf("1e-8"),
    reach: int = 2,
) -> Set[FrozenSet[int]]:
    """
    Recover a face list from a development and the matching 3D points.

    A pair of lifts is an edge when their planar distance matches the 3D
    distance within ``tol``; a face is a triple of mutually adjacent lifts
    whose planar triangle contains no other lift.
    """
    n = len(points3d)
    l1, l2 = lattice
    shifts = [
        (m * l1[0] + k * l2[0], m * l1[1] + k * l2[1])
        for m, k in product(range(-reach, reach + 1), repeat=2)
    ]
    all_lifts = [
        (v, (lifts2d[v][0] + s[0], lifts2d[v][1] + s[1])) for v in range(n) for s in shifts
    ]
    dist3 = {
        (i, j): norm(sub(tuple(points3d[i]), tuple(points3d[j])))  # type: ignore[arg-type]
        for i in range(n)
        for j in range(n)
        if i != j
    }

    def matches(u: Tuple[int, Point2], w: Tuple[int, Point2]) -> bool:
        if u[0] == w[0]:
            return False
        d = mpmath.sqrt((u[1][0] - w[1][0]) ** 2 + (u[1][1] - w[1][1]) ** 2)
        return abs(d - dist3[(u[0], w[0])]) < tol

    def cross2(o: Point2, p: Point2, q: Point2) -> mpf:
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    def contains(tri: Sequence[Point2], p: Point2) -> bool:
        signs = [cross2(tri[i], tri[(i + 1) % 3], p) for i in range(3)]
        return all(s > tol for s in signs) or all(s < -tol for s in signs)

    faces: Set[FrozenSet[int]] = set()
    anchors = [(v, lifts2d[v]) for v in range(n)]
    for anchor in anchors:
        near = [w for w in all_lifts if matches(anchor, w)]
        for i, p in enumerate(near):
            for q in near[i + 1 :]:
                if p[0] == q[0] or not matches(p, q):
                    continue
                tri = (anchor[1], p[1], q[1])
                if any(contains(tri, z[1]) for z in all_lifts):
                    continue
                faces.add(frozenset((anchor[0], p[0], q[0])))
    return faces


def edge_length_mismatch(c: Configuration, dev: Development) -> mpf:
    """Largest |planar edge length - 3D edge length| over all faces."""
    t = c.triangulation
    worst = mpf(0)
    with mpmath.workdps(c.precision):
        for f, pos in zip(t.faces, dev.face_positions):
            for k in range(3):
                a, b = f[k], f[(k + 1) % 3]
                pa, pb = pos[k], pos[(k + 1) % 3]
                planar = mpmath.sqrt((pa[0] - pb[0]) ** 2 + (pa[1] - pb[1]) ** 2)
                worst = max(worst, abs(planar - norm(sub(c.point(a), c.point(b)))))
    return worst


def alignment_residual(dev: Development, other: Optional[Tuple[Point2, Point2]]) -> mpf:
    """Max entrywise difference of reduced Gram matrices."""
    if other is None:
        return mpf(0)
    g1 = reduced_gram(*dev.lattice)
    g2 = reduced_gram(*other)
    return max(abs(g1[i][j] - g2[i][j]) for i in range(2) for j in range(2))
