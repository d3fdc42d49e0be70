"""Float embeddedness tests for pairs of torus faces.

Disjoint pairs use a separating-axis test; pairs sharing one vertex are
embedded there iff the four edge directions leaving the shared vertex
(negated for the second face) lie in an open half-space.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Literal, Tuple

import numpy as np

from papertorus.core.models import Configuration, Triangulation
from papertorus.logging import get_logger

logger = get_logger(__name__)

PairClass = Literal["disjoint", "one-shared", "two-shared"]

AXIS_EPS = 1e-14
SEPARATION_TOL = 1e-12


@dataclass(frozen=True)
class PairRelation:
    """Combinatorial class of a face pair plus the float intersection verdict."""

    faces: Tuple[int, int]
    kind: PairClass
    shared: Tuple[int, ...]
    intersects: bool


@dataclass(frozen=True)
class PairTables:
    """Face pairs of a triangulation grouped by class, as index arrays."""

    disjoint: np.ndarray  # (P, 2) face indices
    shared: np.ndarray  # (Q, 2) face indices
    shared_quads: np.ndarray  # (Q, 5) rows (s, a, b, c, d)
    two_shared: np.ndarray  # (R, 2) face indices


@lru_cache(maxsize=8)
def pair_tables(t: Triangulation) -> PairTables:
    disjoint: List[Tuple[int, int]] = []
    shared: List[Tuple[int, int]] = []
    quads: List[Tuple[int, int, int, int, int]] = []
    two: List[Tuple[int, int]] = []
    for i, j in combinations(range(len(t.faces)), 2):
        common = set(t.faces[i]) & set(t.faces[j])
        if not common:
            disjoint.append((i, j))
        elif len(common) == 1:
            (s,) = common
            a, b = (v for v in t.faces[i] if v != s)
            c, d = (v for v in t.faces[j] if v != s)
            shared.append((i, j))
            quads.append((s, a, b, c, d))
        else:
            two.append((i, j))
    return PairTables(
        disjoint=np.array(disjoint, dtype=int).reshape(-1, 2),
        shared=np.array(shared, dtype=int).reshape(-1, 2),
        shared_quads=np.array(quads, dtype=int).reshape(-1, 5),
        two_shared=np.array(two, dtype=int).reshape(-1, 2),
    )


def _unit(v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    n = np.linalg.norm(v, axis=-1)
    safe = np.where(n > AXIS_EPS, n, 1.0)
    return v / safe[..., None], n > AXIS_EPS


def sat_separated(tri_a: np.ndarray, tri_b: np.ndarray) -> np.ndarray:
    """
    Separating-axis test for batches of triangles.

    Args:
        tri_a: (P, 3, 3) vertex coordinates
        tri_b: (P, 3, 3) vertex coordinates

    Returns:
        (P,) booleans, True where some axis separates the pair
    """
    ea = np.roll(tri_a, -1, axis=1) - tri_a
    eb = np.roll(tri_b, -1, axis=1) - tri_b
    na = np.cross(ea[:, 0], ea[:, 1])
    nb = np.cross(eb[:, 0], eb[:, 1])
    axes = [na, nb]
    for i in range(3):
        for j in range(3):
            axes.append(np.cross(ea[:, i], eb[:, j]))
    for i in range(3):
        axes.append(np.cross(na, ea[:, i]))
        axes.append(np.cross(nb, eb[:, i]))
    stacked, valid = _unit(np.stack(axes, axis=1))  # (P, 17, 3)
    pa = np.einsum("pak,pvk->pav", stacked, tri_a)
    pb = np.einsum("pak,pvk->pav", stacked, tri_b)
    gap = np.maximum(pb.min(axis=2) - pa.max(axis=2), pa.min(axis=2) - pb.max(axis=2))
    return np.any(valid & (gap > SEPARATION_TOL), axis=1)


def cone_separated(x: np.ndarray) -> np.ndarray:
    """
    Whether each set of directions lies in an open half-space.

    Args:
        x: (Q, K, 3) directions, e.g. a', b', -c', -d' from a shared vertex

    Returns:
        (Q,) booleans
    """
    xu, _ = _unit(x)
    cands = []
    count = x.shape[1]
    for i, j in combinations(range(count), 2):
        cr = np.cross(xu[:, i], xu[:, j])
        cands.extend([cr, -cr])
    normal = np.cross(xu[:, 0], xu[:, 1])
    for i in range(count):
        inplane = np.cross(normal, xu[:, i])
        cands.extend([inplane, -inplane, xu[:, i]])
    cu, valid = _unit(np.stack(cands, axis=1))  # (Q, C, 3)
    dots = np.einsum("qck,qvk->qcv", cu, xu)
    feasible = valid & np.all(dots >= -SEPARATION_TOL, axis=2)
    strict = valid & np.all(dots > SEPARATION_TOL, axis=2)
    summed = np.einsum("qc,qck->qk", feasible.astype(float), cu)
    summed_u, summed_valid = _unit(summed)
    summed_strict = summed_valid & np.all(
        np.einsum("qk,qvk->qv", summed_u, xu) > SEPARATION_TOL, axis=1
    )
    return np.any(strict, axis=1) | summed_strict


def pair_verdicts(points: np.ndarray, t: Triangulation) -> Dict[str, np.ndarray]:
    """Per-class arrays of "does not intersect" verdicts, in canonical pair order."""
    tables = pair_tables(t)
    faces = np.array(t.faces, dtype=int)
    tri = points[faces]
    disjoint_ok = sat_separated(tri[tables.disjoint[:, 0]], tri[tables.disjoint[:, 1]])
    q = tables.shared_quads
    s = points[q[:, 0]]
    x = np.stack(
        [points[q[:, 1]] - s, points[q[:, 2]] - s, s - points[q[:, 3]], s - points[q[:, 4]]],
        axis=1,
    )
    shared_ok = cone_separated(x)
    return {"disjoint": disjoint_ok, "shared": shared_ok}


def is_embedded_np(points: np.ndarray, t: Triangulation) -> bool:
    verdicts = pair_verdicts(points, t)
    return bool(verdicts["disjoint"].all() and verdicts["shared"].all())


def is_embedded_float(c: Configuration) -> bool:
    """
    Float embeddedness: disjoint pairs separated, one-shared pairs meeting only at the vertex.

    Pairs sharing an edge are exempt; the certifier provides the rigorous version.
    """
    points = np.array(c.as_floats(), dtype=float)
    embedded = is_embedded_np(points, c.triangulation)
    logger.debug("Float embedding test", extra={"event": "embedding.float", "embedded": embedded})
    return embedded


def tri_pair_relation(c: Configuration, f1: int, f2: int) -> PairRelation:
    """Classify a face pair by shared vertices and test it in float64."""
    if f1 == f2:
        raise ValueError("a face pair needs two different faces")
    t = c.triangulation
    common = tuple(sorted(set(t.faces[f1]) & set(t.faces[f2])))
    points = np.array(c.as_floats(), dtype=float)
    if not common:
        tri = points[np.array([t.faces[f1], t.faces[f2]])]
        hit = not bool(sat_separated(tri[0:1], tri[1:2])[0])
        return PairRelation((f1, f2), "disjoint", common, hit)
    if len(common) == 1:
        (s,) = common
        a, b = (v for v in t.faces[f1] if v != s)
        c_, d = (v for v in t.faces[f2] if v != s)
        x = np.stack([points[a] - points[s], points[b] - points[s], points[s] - points[c_], points[s] - points[d]])
        hit = not bool(cone_separated(x[None])[0])
        return PairRelation((f1, f2), "one-shared", common, hit)
    return PairRelation((f1, f2), "two-shared", common, False)


def relation_counts(c: Configuration) -> Dict[str, int]:
    tables = pair_tables(c.triangulation)
    return {
        "disjoint": len(tables.disjoint),
        "one-shared": len(tables.shared),
        "two-shared": len(tables.two_shared),
    }
