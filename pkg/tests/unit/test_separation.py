"""Unit tests for exact separation certificates."""

from fractions import Fraction

import numpy as np
import pytest

from papertorus.core.errors import NoCertificateFound
from papertorus.certifier.separation import (
    cube_surface_grid,
    default_margin,
    find_separation,
    find_separation_disjoint,
    find_separation_shared,
    margin_for,
    relevant_pairs,
    replay_certificate,
    robustness_radius,
)
from papertorus.geometry.exact import scale_to_integers
from papertorus.geometry.puptent import published_pup_tent


@pytest.fixture(scope="module")
def scaled():
    return scale_to_integers(published_pup_tent(64), 32)


@pytest.fixture(scope="module")
def pairs(scaled):
    return relevant_pairs(scaled)


@pytest.fixture(scope="module")
def disjoint_certificate(scaled, pairs):
    return find_separation_disjoint(scaled, pairs[0])


def test_cube_surface_grid_small():
    grid = cube_surface_grid(2)
    assert len(grid) == 5**3 - 3**3
    assert (np.abs(grid).max(axis=1) == 2).all()
    rows = [tuple(int(x) for x in row) for row in grid]
    assert rows == sorted(rows)
    assert len(set(rows)) == len(rows)


def test_default_margin():
    assert default_margin(10**32) == 6 * 10**30


def test_relevant_pairs_order(scaled, pairs):
    faces = scaled.triangulation.faces
    assert len(pairs) == 96
    shared_counts = [len(set(faces[a]) & set(faces[b])) for a, b in pairs]
    assert shared_counts == [0] * 24 + [1] * 72
    assert pairs[:24] == sorted(pairs[:24])


def test_disjoint_certificate(scaled, disjoint_certificate):
    cert = disjoint_certificate
    assert cert.kind == "disjoint"
    assert cert.shared_vertex is None
    assert max(abs(x) for x in cert.direction) == 300
    assert cert.margin >= 6 * 10**30
    assert margin_for(scaled, cert.pair, cert.direction) == (cert.side, cert.margin)
    assert replay_certificate(scaled, cert)


def test_shared_vertex_certificate(scaled, pairs):
    cert = find_separation_shared(scaled, pairs[24])
    assert cert.kind == "shared-vertex"
    faces = scaled.triangulation.faces
    assert {cert.shared_vertex} == set(faces[cert.pair[0]]) & set(faces[cert.pair[1]])
    assert cert.margin >= default_margin(scaled.scale)
    assert replay_certificate(scaled, cert)


def test_pair_kind_is_checked(scaled, pairs):
    with pytest.raises(ValueError):
        find_separation_disjoint(scaled, pairs[24])
    with pytest.raises(ValueError):
        find_separation_shared(scaled, pairs[0])


def test_certificate_is_monotone_in_the_margin(scaled, disjoint_certificate):
    weaker = find_separation(scaled, disjoint_certificate.pair, min_margin=disjoint_certificate.margin // 2)
    assert weaker.margin >= disjoint_certificate.margin // 2
    assert replay_certificate(scaled, disjoint_certificate, min_margin=disjoint_certificate.margin // 2)


def test_tampered_certificates_do_not_replay(scaled, disjoint_certificate):
    cert = disjoint_certificate
    x, y, z = cert.direction
    tampered = [
        cert.model_copy(update={"margin": cert.margin + 1}),
        cert.model_copy(update={"side": 1 - cert.side}),
        cert.model_copy(update={"kind": "shared-vertex"}),
        cert.model_copy(update={"direction": (x, y, z - 1 if z > 0 else z + 1) if abs(z) != 300 else (x - 1 if x > 0 else x + 1, y, z)}),
    ]
    for bad in tampered:
        assert not replay_certificate(scaled, bad)
    assert not replay_certificate(scaled, cert, grid=299)


def test_unreachable_margin_raises(scaled, pairs):
    with pytest.raises(NoCertificateFound) as excinfo:
        find_separation(scaled, pairs[0], grid=4, min_margin=10 * scaled.scale)
    assert excinfo.value.pair == pairs[0]
    assert excinfo.value.best_margin is not None


def test_edge_sharing_pair_has_no_margin(scaled):
    faces = scaled.triangulation.faces
    neighbour = next(i for i in range(1, 16) if len(set(faces[0]) & set(faces[i])) == 2)
    with pytest.raises(ValueError):
        margin_for(scaled, (0, neighbour), (1, 0, 0))


def test_robustness_radius(disjoint_certificate):
    radius = robustness_radius(disjoint_certificate, 10**32, 300)
    assert radius == Fraction(disjoint_certificate.margin, 2 * 10**32 * 300)
    assert radius >= Fraction(1, 10**4)
