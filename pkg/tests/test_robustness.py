"""Small height perturbations of the pup tent stay embedded and keep their hull."""

import mpmath
import numpy as np
import pytest

from papertorus.core.models import PupTentParams
from papertorus.geometry.hull import convex_hull
from papertorus.geometry.intersection import is_embedded_np
from papertorus.geometry.puptent import build_pup_tent, published_params, published_pup_tent


def test_height_perturbations_stay_embedded():
    c = published_pup_tent(64)
    base = np.array(c.as_floats())
    rng = np.random.default_rng(2024)
    for _ in range(100):
        moved = base.copy()
        moved[:, 2] += rng.uniform(-1e-5, 1e-5, size=len(base))
        assert is_embedded_np(moved, c.triangulation)


@pytest.mark.parametrize("seed", range(100))
def test_hull_is_stable_under_small_parameter_changes(seed: int):
    p = published_params(64)
    shift = np.random.default_rng(seed).uniform(-1e-6, 1e-6, size=3)
    with mpmath.workdps(64):
        moved = PupTentParams(*(z + mpmath.mpf(float(d)) for z, d in zip(p.as_tuple(), shift)))
    report = convex_hull(build_pup_tent(moved, 64))
    assert report.face_number == 6
    assert all(report.on_hull)
    assert len(report.facet_list) == 12
