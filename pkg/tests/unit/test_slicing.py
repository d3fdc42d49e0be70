"""Unit tests for planar slices."""

import pytest
from mpmath import mpf

from papertorus.geometry.puptent import published_pup_tent
from papertorus.geometry.slicing import loops_are_simple_and_disjoint, make_plane, ray_crossings, slice_plane


@pytest.fixture(scope="module")
def pup_tent():
    return published_pup_tent(64)


def test_xz_slice_has_two_loops(pup_tent):
    result = slice_plane(pup_tent, make_plane((0, 0, 0), (0, 1, 0)))
    assert len(result.loops) == 2
    assert not result.open_chains
    assert loops_are_simple_and_disjoint(result)


def test_plane_above_the_torus_misses_it(pup_tent):
    result = slice_plane(pup_tent, make_plane((0, 0, 5), (0, 0, 1)))
    assert result.loops == ()
    assert result.rows() == []


def test_loops_have_even_ray_crossings_from_outside(pup_tent):
    result = slice_plane(pup_tent, make_plane((0, 0, 0), (0, 1, 0)))
    for loop in result.loops:
        assert len(loop) >= 3
        assert ray_crossings(loop, (-10.0, 0.123), (1.0, 0.0001)) % 2 == 0


def test_plane_through_a_vertex_is_shifted(pup_tent):
    z0 = pup_tent.point(0)[2]
    plane = make_plane((0, 0, z0), (0, 0, 1))
    result = slice_plane(pup_tent, plane)
    assert result.plane.point[2] > z0
    assert not result.open_chains


def test_rows_carry_loop_ids(pup_tent):
    result = slice_plane(pup_tent, make_plane((0, 0, 0), (0, 1, 0)))
    rows = result.rows()
    assert {loop_id for loop_id, _, _ in rows} == {0, 1}
    assert len(rows) == sum(len(loop) for loop in result.loops)


def test_zero_normal_is_rejected():
    with pytest.raises(ValueError):
        make_plane((0, 0, 0), (0, 0, 0))
