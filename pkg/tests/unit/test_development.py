"""Unit tests for the intrinsic development of the pup tent."""

import mpmath
import pytest
from mpmath import mpf

from papertorus.core.errors import NotFlatEnough
from papertorus.geometry.angles import surface_area
from papertorus.geometry.development import (
    alignment_residual,
    covolume,
    develop,
    edge_length_mismatch,
    reconstruct_faces,
    reduced_gram,
)
from papertorus.geometry.puptent import PUBLISHED_DEVELOPMENT, build_pup_tent, published_params, published_pup_tent


@pytest.fixture(scope="module")
def pup_tent():
    return published_pup_tent(64)


@pytest.fixture(scope="module")
def development(pup_tent):
    return develop(pup_tent)


def _published_lattice():
    return tuple(tuple(mpf(x) for x in row) for row in PUBLISHED_DEVELOPMENT["lattice"])


def test_holonomy_vanishes(development):
    assert len(development.rotational_holonomy) == 2
    assert all(abs(h) < mpf("1e-20") for h in development.rotational_holonomy)


def test_development_is_isometric(pup_tent, development):
    assert edge_length_mismatch(pup_tent, development) < mpf("1e-40")


def test_lattice_matches_published_generators(development):
    with mpmath.workdps(64):
        assert alignment_residual(development, _published_lattice()) < mpf("1e-8")


def test_covolume_equals_surface_area(pup_tent, development):
    with mpmath.workdps(64):
        assert abs(covolume(development.lattice) - surface_area(pup_tent)) < mpf("1e-20")


def test_reduced_gram_ignores_basis_choice(development):
    with mpmath.workdps(64):
        l1, l2 = development.lattice
        summed = (l1[0] + l2[0], l1[1] + l2[1])
        turned = (-l1[0], -l1[1])
        g = reduced_gram(l1, l2)
        for other in (reduced_gram(summed, l2), reduced_gram(l2, turned)):
            assert max(abs(g[i][j] - other[i][j]) for i in range(2) for j in range(2)) < mpf("1e-50")


def test_traversal_order_does_not_change_the_lattice(pup_tent, development):
    other = develop(pup_tent, base=5, traversal="dfs")
    with mpmath.workdps(64):
        assert alignment_residual(development, other.lattice) < mpf("1e-30")


def test_far_from_flat_is_rejected():
    p = published_params(64)
    bent = build_pup_tent(type(p)(mpf("0.5"), p.z1, p.z2), 64)
    with pytest.raises(NotFlatEnough):
        develop(bent)


def test_faces_reconstructed_from_development(pup_tent, development):
    with mpmath.workdps(64):
        faces = reconstruct_faces(pup_tent.coordinates, development.vertex_lifts, development.lattice)
    assert faces == pup_tent.triangulation.face_keys


def test_faces_reconstructed_from_published_development(pup_tent):
    with mpmath.workdps(64):
        lifts = tuple(tuple(mpf(x) for x in row) for row in PUBLISHED_DEVELOPMENT["vertices"])
        faces = reconstruct_faces(pup_tent.coordinates, lifts, _published_lattice())
    assert faces == pup_tent.triangulation.face_keys
