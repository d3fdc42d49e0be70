"""Exact separation certificates for face pairs (robust embedding).

For a pair of faces with no common vertex, a direction L separates them
with margin m when every projection of one face lies at least m below
every projection of the other. For faces meeting at a vertex v, the
projection of v must lie at least m above the opposite edge of one face
and at least m below the opposite edge of the other. Directions come from
the integer cube surface max|L_i| = grid in lexicographic order; projections
use the coordinates scaled to integers, so margins are exact.

Candidate directions are screened in float64 and confirmed in exact integer
arithmetic, in grid order; the first confirmed direction is the certificate.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from papertorus.core.errors import NoCertificateFound
from papertorus.core.models import ScaledIntegerConfig, SeparationCertificate
from papertorus.geometry.exact import idot
from papertorus.geometry.intersection import pair_tables
from papertorus.logging import get_logger
from papertorus.settings import DEFAULT_GRID

logger = get_logger(__name__)

CHUNK = 262_144
SCREEN_SLACK = 1e-9


def default_margin(scale: int) -> int:
    """6 * 10**30 at scale 10**32, i.e. 0.06 in unscaled units."""
    return 6 * scale // 100


@lru_cache(maxsize=2)
def cube_surface_grid(grid: int = DEFAULT_GRID) -> np.ndarray:
    """All integer (x, y, z) with max(|x|, |y|, |z|) = grid, lexicographically sorted."""
    axis = np.arange(-grid, grid + 1, dtype=np.int64)
    ys, zs = np.meshgrid(axis, axis, indexing="ij")
    full = np.stack([ys.ravel(), zs.ravel()], axis=1)
    rim = full[np.abs(full).max(axis=1) == grid]
    blocks = []
    for x in axis:
        yz = full if abs(x) == grid else rim
        blocks.append(np.column_stack([np.full(len(yz), x, dtype=np.int64), yz]))
    return np.concatenate(blocks)


def _disjoint_margin(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], direction: Sequence[int]
) -> Tuple[int, int]:
    """(side, margin) with the better of the two orderings."""
    pa = [idot(p, direction) for p in a]
    pb = [idot(p, direction) for p in b]
    below = min(pb) - max(pa)
    above = min(pa) - max(pb)
    return (0, below) if below >= above else (1, above)


def _shared_margin(
    v: Sequence[int],
    e0: Sequence[Sequence[int]],
    e1: Sequence[Sequence[int]],
    direction: Sequence[int],
) -> Tuple[int, int]:
    pv = idot(v, direction)
    p0 = [idot(p, direction) for p in e0]
    p1 = [idot(p, direction) for p in e1]
    side0 = min(pv - max(p0), min(p1) - pv)
    side1 = min(pv - max(p1), min(p0) - pv)
    return (0, side0) if side0 >= side1 else (1, side1)


def _pair_geometry(
    sc: ScaledIntegerConfig, pair: Tuple[int, int]
) -> Tuple[str, Optional[int], List[Tuple[int, int, int]], List[Tuple[int, int, int]]]:
    """Kind, shared vertex and the two point groups whose projections are compared."""
    t = sc.triangulation
    f0, f1 = t.faces[pair[0]], t.faces[pair[1]]
    common = set(f0) & set(f1)
    if not common:
        return "disjoint", None, [sc.coordinates[v] for v in f0], [sc.coordinates[v] for v in f1]
    if len(common) == 1:
        (s,) = common
        return (
            "shared-vertex",
            s,
            [sc.coordinates[v] for v in f0 if v != s],
            [sc.coordinates[v] for v in f1 if v != s],
        )
    raise ValueError(f"faces {pair} share an edge; such pairs need no certificate")


def margin_for(
    sc: ScaledIntegerConfig, pair: Tuple[int, int], direction: Sequence[int]
) -> Tuple[int, int]:
    """Exact (side, margin) of a face pair in one direction."""
    kind, shared, g0, g1 = _pair_geometry(sc, pair)
    if kind == "disjoint":
        return _disjoint_margin(g0, g1, direction)
    return _shared_margin(sc.coordinates[shared], g0, g1, direction)  # type: ignore[index]


def _float_margins(
    kind: str,
    shared: Optional[np.ndarray],
    g0: np.ndarray,
    g1: np.ndarray,
    directions: np.ndarray,
) -> np.ndarray:
    d = directions.astype(float)
    p0 = d @ g0.T
    p1 = d @ g1.T
    if kind == "disjoint":
        return np.maximum(p1.min(axis=1) - p0.max(axis=1), p0.min(axis=1) - p1.max(axis=1))
    pv = d @ shared
    side0 = np.minimum(pv - p0.max(axis=1), p1.min(axis=1) - pv)
    side1 = np.minimum(pv - p1.max(axis=1), p0.min(axis=1) - pv)
    return np.maximum(side0, side1)


def _screened(
    sc: ScaledIntegerConfig, pair: Tuple[int, int], grid: int, threshold: float
) -> Iterator[Tuple[int, float]]:
    """Grid indices whose float margin clears the threshold, in grid order; also tracks the best."""
    kind, shared, g0, g1 = _pair_geometry(sc, pair)
    scale = float(sc.scale)
    f0 = np.array(g0, dtype=float) / scale
    f1 = np.array(g1, dtype=float) / scale
    fv = np.array(sc.coordinates[shared], dtype=float) / scale if shared is not None else None
    directions = cube_surface_grid(grid)
    for start in range(0, len(directions), CHUNK):
        margins = _float_margins(kind, fv, f0, f1, directions[start : start + CHUNK])
        for idx in np.flatnonzero(margins >= threshold):
            yield start + int(idx), float(margins[idx])
        yield -1, float(margins.max())


def find_separation(
    sc: ScaledIntegerConfig,
    pair: Tuple[int, int],
    grid: int = DEFAULT_GRID,
    min_margin: Optional[int] = None,
) -> SeparationCertificate:
    """
    First grid direction separating the pair with an exact margin >= ``min_margin``.

    Raises:
        NoCertificateFound: no direction on the grid reaches the margin
    """
    required = default_margin(sc.scale) if min_margin is None else min_margin
    kind, shared, _, _ = _pair_geometry(sc, pair)
    threshold = required / sc.scale - SCREEN_SLACK
    directions = cube_surface_grid(grid)
    best = float("-inf")
    for idx, value in _screened(sc, pair, grid, threshold):
        if idx < 0:
            best = max(best, value)
            continue
        direction = tuple(int(x) for x in directions[idx])
        side, margin = margin_for(sc, pair, direction)
        if margin >= required:
            return SeparationCertificate(
                pair=pair,
                kind=kind,  # type: ignore[arg-type]
                direction=direction,  # type: ignore[arg-type]
                side=side,  # type: ignore[arg-type]
                margin=margin,
                shared_vertex=shared,
            )
    raise NoCertificateFound(
        f"no direction on the {grid}-grid separates faces {pair} by {required}",
        pair=pair,
        best_margin=int(best * sc.scale) if best > float("-inf") else None,
    )


def find_separation_disjoint(
    sc: ScaledIntegerConfig, pair: Tuple[int, int], grid: int = DEFAULT_GRID, min_margin: Optional[int] = None
) -> SeparationCertificate:
    if set(sc.triangulation.faces[pair[0]]) & set(sc.triangulation.faces[pair[1]]):
        raise ValueError(f"faces {pair} share a vertex")
    return find_separation(sc, pair, grid, min_margin)


def find_separation_shared(
    sc: ScaledIntegerConfig, pair: Tuple[int, int], grid: int = DEFAULT_GRID, min_margin: Optional[int] = None
) -> SeparationCertificate:
    if len(set(sc.triangulation.faces[pair[0]]) & set(sc.triangulation.faces[pair[1]])) != 1:
        raise ValueError(f"faces {pair} do not share exactly one vertex")
    return find_separation(sc, pair, grid, min_margin)


def relevant_pairs(sc: ScaledIntegerConfig) -> List[Tuple[int, int]]:
    """Disjoint pairs then one-shared pairs, each in canonical order."""
    tables = pair_tables(sc.triangulation)
    disjoint = [tuple(int(x) for x in row) for row in tables.disjoint]
    shared = [tuple(int(x) for x in row) for row in tables.shared]
    return disjoint + shared  # type: ignore[return-value]


def certify_robust_embedding(
    sc: ScaledIntegerConfig,
    grid: int = DEFAULT_GRID,
    min_margin: Optional[int] = None,
    threads: int = 1,
) -> List[SeparationCertificate]:
    """
    Certificates for every disjoint and one-shared face pair.

    Pairs sharing an edge are skipped: once the others are separated, a
    perturbation cannot make two faces with a common edge intersect.

    Raises:
        NoCertificateFound: the first failing pair in canonical order
    """
    pairs = relevant_pairs(sc)

    def attempt(pair: Tuple[int, int]):
        try:
            return find_separation(sc, pair, grid, min_margin)
        except NoCertificateFound as exc:
            return exc

    if threads <= 1:
        outcomes = [attempt(p) for p in pairs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(attempt, pairs))

    for outcome in outcomes:
        if isinstance(outcome, NoCertificateFound):
            logger.warning(
                "Pair not separated",
                extra={"event": "separation.failed", "pair": list(outcome.pair), "best_margin": outcome.best_margin},
            )
            raise outcome
    certificates: List[SeparationCertificate] = outcomes  # type: ignore[assignment]
    logger.info(
        "Robust embedding certified",
        extra={
            "event": "separation.certified",
            "certificates": len(certificates),
            "min_margin": min(c.margin for c in certificates) if certificates else None,
        },
    )
    return certificates


def replay_certificate(
    sc: ScaledIntegerConfig,
    cert: SeparationCertificate,
    grid: int = DEFAULT_GRID,
    min_margin: Optional[int] = None,
) -> bool:
    """Re-derive the certificate's margin exactly and check every stated field."""
    required = default_margin(sc.scale) if min_margin is None else min_margin
    if max(abs(x) for x in cert.direction) != grid:
        return False
    try:
        kind, shared, g0, g1 = _pair_geometry(sc, cert.pair)
    except (ValueError, IndexError):
        return False
    if kind != cert.kind:
        return False
    if kind == "disjoint":
        pa = [idot(p, cert.direction) for p in g0]
        pb = [idot(p, cert.direction) for p in g1]
        margin = min(pb) - max(pa) if cert.side == 0 else min(pa) - max(pb)
    else:
        pv = idot(sc.coordinates[shared], cert.direction)  # type: ignore[index]
        p0 = [idot(p, cert.direction) for p in g0]
        p1 = [idot(p, cert.direction) for p in g1]
        if cert.side == 0:
            margin = min(pv - max(p0), min(p1) - pv)
        else:
            margin = min(pv - max(p1), min(p0) - pv)
    return margin == cert.margin and margin >= required


def robustness_radius(cert: SeparationCertificate, scale: int, grid: int = DEFAULT_GRID) -> Fraction:
    """
    Height perturbation the certificate tolerates.

    Moving one coordinate per vertex by eps moves each projection on L/grid by
    at most eps, so separation survives while 2 * eps < margin / (scale * grid).
    """
    return Fraction(cert.margin, 2 * scale * grid)
