"""Crofton length of each vertex link against its cone angle."""

import mpmath
import pytest

from papertorus.geometry.angles import cone_angles
from papertorus.geometry.crofton import crofton_statistics, spherical_link
from papertorus.geometry.puptent import published_pup_tent


@pytest.mark.parametrize("vertex", [0, 1, 2, 5])
def test_link_length_matches_cone_angle(vertex: int):
    c = published_pup_tent(64)
    with mpmath.workdps(64):
        theta = float(cone_angles(c).cone_angles[vertex])
    estimate, error = crofton_statistics(spherical_link(c, vertex), samples=1_000_000, seed=vertex)
    assert abs(estimate - theta) < 0.01 * theta
    assert error < 0.005 * theta
