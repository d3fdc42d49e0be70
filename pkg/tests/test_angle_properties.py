"""Cone angle identities on perturbed and symmetric configurations."""

import mpmath
import numpy as np
import pytest

from papertorus.combinatorics.triangulations import BEST8_SYMMETRY
from papertorus.core.models import PupTentParams
from papertorus.geometry.angles import angle_sum_defect
from papertorus.geometry.puptent import PUBLISHED_Z, build_pup_tent, published_pup_tent, rotate_about_z
from papertorus.solver.angle_map import angle_map_full


@pytest.mark.parametrize("seed", range(100))
def test_angle_sum_is_pi_per_face(seed: int):
    base = published_pup_tent(64)
    rng = np.random.default_rng(seed)
    shifts = rng.uniform(-0.05, 0.05, size=(8, 3))
    with mpmath.workdps(64):
        moved = tuple(
            tuple(x + mpmath.mpf(float(d)) for x, d in zip(point, delta))
            for point, delta in zip(base.coordinates, shifts)
        )
    c = base.with_coordinates(moved)
    assert angle_sum_defect(c) < mpmath.mpf("1e-55")


@pytest.mark.parametrize("seed", range(10))
def test_cone_angles_respect_the_rotation(seed: int):
    rng = np.random.default_rng(seed)
    with mpmath.workdps(64):
        heights = [mpmath.mpf(z) + mpmath.mpf(float(d)) for z, d in zip(PUBLISHED_Z, rng.uniform(-0.01, 0.01, 3))]
    c = build_pup_tent(PupTentParams.from_values(*heights, precision=64), 64)
    with mpmath.workdps(64):
        theta = angle_map_full(c)
        rotated = angle_map_full(rotate_about_z(c))
        for k in range(8):
            assert abs(theta[BEST8_SYMMETRY[k]] - theta[k]) < mpmath.mpf("1e-55")
            assert abs(rotated[k] - theta[k]) < mpmath.mpf("1e-55")
