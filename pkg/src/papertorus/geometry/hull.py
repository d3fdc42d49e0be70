"""Convex hull facets and the face number of a configuration.

``convex_hull`` decides every facet with exact big-integer orientation
signs on coordinates scaled by 10**32. ``hull_facets_np`` is the float64
version the search uses for its hull constraint.
"""

from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from papertorus.core.errors import GeneralPositionFailure
from papertorus.core.models import Configuration, HullReport, Triangulation
from papertorus.core.models.triangulation import Face, face_edges
from papertorus.geometry.exact import orient3d, scale_to_integers
from papertorus.logging import get_logger
from papertorus.settings import DEFAULT_SCALE_EXPONENT

logger = get_logger(__name__)


def hull_facets_exact(points: Sequence[Sequence[int]]) -> List[Face]:
    """
    Facets of the hull of integer points, oriented with the other points on the negative side.

    Raises:
        GeneralPositionFailure: four points are coplanar
    """
    n = len(points)
    facets: List[Face] = []
    for i, j, k in combinations(range(n), 3):
        signs = set()
        for m in range(n):
            if m in (i, j, k):
                continue
            s = orient3d(points[i], points[j], points[k], points[m])
            if s == 0:
                raise GeneralPositionFailure(f"points {i}, {j}, {k}, {m} are coplanar")
            signs.add(s)
        if signs == {-1}:
            facets.append((i, j, k))
        elif signs == {1}:
            facets.append((i, k, j))
    return facets


def hull_report(facets: Sequence[Face], t: Triangulation) -> HullReport:
    facet_keys = [frozenset(f) for f in facets]
    torus = [f for f, key in zip(facets, facet_keys) if key in t.face_keys]
    on_hull = [any(v in f for f in facets) for v in range(t.vertex_count)]
    edges = {e for f in facets for e in face_edges(f)}
    return HullReport(
        facet_list=list(facets),
        on_hull=on_hull,
        face_number=len(torus),
        torus_facets=torus,
        edge_count=len(edges),
    )


def convex_hull(c: Configuration, exponent: int = DEFAULT_SCALE_EXPONENT) -> HullReport:
    """
    Hull of the vertices with exact orientation predicates.

    Returns:
        HullReport with face_number = number of torus faces that are hull facets
    """
    scaled = scale_to_integers(c, exponent)
    facets = hull_facets_exact(scaled.coordinates)
    report = hull_report(facets, c.triangulation)
    logger.debug(
        "Convex hull computed",
        extra={
            "event": "hull.done",
            "facets": len(report.facet_list),
            "face_number": report.face_number,
            "all_on_hull": all(report.on_hull),
        },
    )
    return report


_TRIPLE_CACHE: dict = {}


def _triples(n: int) -> np.ndarray:
    if n not in _TRIPLE_CACHE:
        _TRIPLE_CACHE[n] = np.array(list(combinations(range(n), 3)), dtype=int)
    return _TRIPLE_CACHE[n]


def hull_facets_np(points: np.ndarray, eps: float = 1e-12) -> Optional[List[Face]]:
    """
    Float hull facets by sign tests over all triples.

    Returns:
        facet triples, or None when some orientation is within ``eps`` of zero
    """
    triples = _triples(len(points))
    a = points[triples[:, 0]]
    normals = np.cross(points[triples[:, 1]] - a, points[triples[:, 2]] - a)
    values = np.einsum("tk,tmk->tm", normals, points[None, :, :] - a[:, None, :])
    mask = np.ones_like(values, dtype=bool)
    rows = np.arange(len(triples))[:, None]
    mask[rows, triples] = False
    others = np.where(mask, values, 0.0)
    if np.any(mask & (np.abs(values) < eps)):
        return None
    below = np.all((others < 0) | ~mask, axis=1)
    above = np.all((others > 0) | ~mask, axis=1)
    facets: List[Face] = []
    for idx in np.flatnonzero(below | above):
        i, j, k = (int(x) for x in triples[idx])
        facets.append((i, j, k) if below[idx] else (i, k, j))
    return facets


def face_number_np(points: np.ndarray, t: Triangulation) -> Tuple[int, bool]:
    """(face number, all vertices on hull); (-1, False) when the hull is degenerate."""
    facets = hull_facets_np(points)
    if facets is None:
        return -1, False
    report = hull_report(facets, t)
    return report.face_number, all(report.on_hull)
