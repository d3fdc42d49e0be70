"""Unit tests for the Moebius and best-8 torus triangulations."""

import pytest

from papertorus.combinatorics.triangulations import (
    BEST8_SYMMETRY,
    automorphisms,
    best8_triangulation,
    is_automorphism,
    moebius_triangulation,
    triangulation_by_name,
)
from papertorus.core.models import Triangulation


def test_moebius_is_a_torus_with_k7_skeleton():
    t = moebius_triangulation()
    assert t.is_valid_torus()
    assert len(t.faces) == 14
    assert len(t.edges) == 21
    assert t.euler_characteristic == 0
    assert all(t.degree(v) == 6 for v in range(7))


def test_moebius_links_are_hexagons():
    t = moebius_triangulation()
    for v in range(7):
        link = t.link(v)
        assert len(link) == 6
        assert set(link) == set(range(7)) - {v}


def test_moebius_automorphism_group_has_order_42():
    assert len(automorphisms(moebius_triangulation())) == 42


def test_best8_has_degree_six_everywhere():
    t = best8_triangulation()
    assert t.is_valid_torus()
    assert len(t.faces) == 16
    assert len(t.edges) == 24
    assert all(t.degree(v) == 6 for v in range(8))


def test_best8_non_edges():
    t = best8_triangulation()
    all_pairs = {(a, b) for a in range(8) for b in range(a + 1, 8)}
    assert all_pairs - set(t.edges) == {(0, 7), (4, 5), (1, 6), (2, 3)}


def test_best8_rotation_is_an_automorphism():
    t = best8_triangulation()
    assert is_automorphism(t, BEST8_SYMMETRY)
    group = automorphisms(t)
    assert BEST8_SYMMETRY in group
    assert tuple(range(8)) in group
    assert len(group) % 16 == 0


def test_non_automorphism_is_rejected():
    t = best8_triangulation()
    # {0, 1, 2} would map to {7, 1, 2}, which is not a face
    perm = (7, 1, 2, 3, 4, 5, 6, 0)
    assert not is_automorphism(t, perm)


def test_broken_face_list_reports_violations():
    t = moebius_triangulation()
    broken = Triangulation(7, t.faces[:-1], name="broken")
    problems = broken.invariant_violations()
    assert problems
    assert any("Euler" in p for p in problems)


def test_inconsistent_orientation_is_reported():
    t = best8_triangulation()
    a, b, c = t.faces[0]
    flipped = Triangulation(8, ((a, c, b),) + t.faces[1:])
    assert not flipped.is_valid_torus()


def test_relabel_keeps_torus_valid():
    t = moebius_triangulation()
    relabeled = t.relabel((3, 4, 5, 6, 0, 1, 2))
    assert relabeled.is_valid_torus()
    assert relabeled.face_keys == t.face_keys


def test_triangulation_by_name():
    assert triangulation_by_name("moebius") is moebius_triangulation()
    assert triangulation_by_name("best8") is best8_triangulation()
    with pytest.raises(ValueError):
        triangulation_by_name("klein")
