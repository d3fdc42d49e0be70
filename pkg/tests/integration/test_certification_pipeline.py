"""End-to-end certification of the shipped pup tent."""

import numpy as np
import pytest

from papertorus.adapters.bundle import CertificateBundle, format_bundle, parse_bundle
from papertorus.adapters.torus_file import bundled_pup_tent
from papertorus.certifier.bounds import crude_bound_certificate
from papertorus.certifier.ift import chain_table, ift_certificate
from papertorus.certifier.separation import (
    certify_robust_embedding,
    default_margin,
    relevant_pairs,
    replay_certificate,
)
from papertorus.core.errors import NoCertificateFound
from papertorus.core.models import PupTentParams
from papertorus.geometry.exact import scale_to_integers
from papertorus.geometry.intersection import sat_separated
from papertorus.geometry.puptent import PUBLISHED_Z, build_pup_tent

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def scaled():
    return scale_to_integers(bundled_pup_tent(64), 32)


@pytest.fixture(scope="module")
def certificates(scaled):
    return certify_robust_embedding(scaled, 300, threads=4)


def test_every_relevant_pair_is_certified(scaled, certificates):
    assert len(certificates) == 96
    assert sum(1 for cert in certificates if cert.kind == "disjoint") == 24
    assert min(cert.margin for cert in certificates) >= 6 * 10**30
    assert all(replay_certificate(scaled, cert, 300) for cert in certificates)


def test_float_separating_axes_agree(scaled, certificates):
    points = np.array(bundled_pup_tent(64).as_floats())
    faces = np.array(scaled.triangulation.faces)
    pairs = np.array([cert.pair for cert in certificates if cert.kind == "disjoint"])
    assert sat_separated(points[faces[pairs[:, 0]]], points[faces[pairs[:, 1]]]).all()


def test_bundle_with_existence_footer(scaled, certificates):
    c = bundled_pup_tent(64)
    cert = ift_certificate(c, 64, crude_bound_certificate(c))
    assert cert.valid
    bundle = CertificateBundle(scaled.scale, 300, default_margin(scaled.scale), certificates, chain_table(cert))
    parsed = parse_bundle(format_bundle(bundle))
    assert parsed.footer["conclusion_radius"] == "1e-13"
    assert all(replay_certificate(scaled, c_, parsed.grid, parsed.min_margin) for c_ in parsed.certificates)


def test_far_perturbation_is_not_certified():
    far = build_pup_tent(PupTentParams.from_values("0.5", PUBLISHED_Z[1], PUBLISHED_Z[2]), 64)
    sc = scale_to_integers(far, 32)
    with pytest.raises(NoCertificateFound) as excinfo:
        certify_robust_embedding(sc, 300, threads=4)
    assert excinfo.value.pair == (1, 9)
    assert excinfo.value.pair in relevant_pairs(sc)
