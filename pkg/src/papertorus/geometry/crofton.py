"""Monte Carlo length of spherical polygons by Crofton's formula.

A spherical curve of length L meets a uniformly random great circle L / pi
times on average, so pi times the mean crossing count estimates L.
"""

from typing import Tuple

import numpy as np

from papertorus.core.models import Configuration
from papertorus.geometry.intersection import cone_separated

CHUNK = 200_000


def crofton_statistics(
    loop: np.ndarray, samples: int, seed: int, closed: bool = True
) -> Tuple[float, float]:
    """
    Crofton estimate and its standard error.

    Args:
        loop: (n, 3) unit vectors; consecutive points are joined by short great arcs
        samples: Number of random great circles
        seed: Seed for numpy's default_rng
        closed: Join the last point back to the first

    Returns:
        (estimate, standard error)
    """
    pts = np.asarray(loop, dtype=float)
    pts = pts / np.linalg.norm(pts, axis=1)[:, None]
    ends = np.roll(pts, -1, axis=0) if closed else pts[1:]
    starts = pts if closed else pts[:-1]
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    remaining = samples
    while remaining > 0:
        n = min(CHUNK, remaining)
        normals = rng.standard_normal((n, 3))
        a = normals @ starts.T > 0
        b = normals @ ends.T > 0
        counts = np.count_nonzero(a != b, axis=1).astype(float)
        total += counts.sum()
        total_sq += (counts**2).sum()
        remaining -= n
    mean = total / samples
    variance = max(total_sq / samples - mean**2, 0.0)
    return float(np.pi * mean), float(np.pi * np.sqrt(variance / samples))


def crofton_estimate(loop: np.ndarray, samples: int, seed: int, closed: bool = True) -> float:
    return crofton_statistics(loop, samples, seed, closed)[0]


def spherical_link(c: Configuration, k: int) -> np.ndarray:
    """Unit directions from vertex ``k`` to its link vertices, in link order."""
    points = np.array(c.as_floats(), dtype=float)
    ring = points[list(c.triangulation.link(k))] - points[k]
    return ring / np.linalg.norm(ring, axis=1)[:, None]


def link_in_open_hemisphere(loop: np.ndarray) -> bool:
    """Whether all link directions fit in an open hemisphere."""
    return bool(cone_separated(np.asarray(loop, dtype=float)[None])[0])
