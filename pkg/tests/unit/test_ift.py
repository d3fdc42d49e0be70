"""Unit tests for the inverse-function-theorem chain."""

import mpmath
import pytest
from mpmath import mpf

from papertorus.certifier import ift
from papertorus.certifier.bounds import crude_bound_certificate
from papertorus.certifier.ift import chain_table, expansion_check, ift_certificate, m_matrix
from papertorus.core.errors import ChainBroken
from papertorus.core.models import PupTentParams
from papertorus.geometry.puptent import build_pup_tent, published_params, published_pup_tent


@pytest.fixture(scope="module")
def certificate():
    c = published_pup_tent(64)
    return ift_certificate(c, 64, crude_bound_certificate(c))


def test_eigenvalues_of_m_exceed_the_floor():
    with mpmath.workdps(64):
        eigenvalues = mpmath.eigsy(m_matrix(64), eigvals_only=True)
        assert all(abs(eigenvalues[i]) > mpf("0.76") for i in range(3))


def test_certificate_is_valid(certificate):
    assert certificate.valid
    assert len(certificate.links) == 9
    assert certificate.conclusion_radius == "1e-13"
    assert certificate.precision == 64
    assert mpf(certificate.flatness_at_p) <= mpf("1e-15")
    assert mpf(certificate.dF_minus_M_inf) < mpf("0.01")
    assert mpf(certificate.dF_minus_M_inf_on_ball) < 1 / mpf(90)
    assert mpf(certificate.min_abs_eigenvalue) > mpf("0.76")


def test_chain_table(certificate):
    table = chain_table(certificate)
    assert len(table) == 10
    assert table["conclusion_radius"] == "1e-13"
    assert table["expansion_lambda"] == "0.25"
    assert all(" " not in value for value in table.values())


def test_expansion_check_fails_when_far_from_m():
    lam = mpf("0.25")
    ok = expansion_check([mpf("0.8"), mpf("-0.9"), mpf("2")], mpf("0.005"), lam)
    assert all(verdict for _, verdict in ok)
    bad = expansion_check([mpf("0.8"), mpf("-0.9"), mpf("2")], mpf("0.1"), lam)
    assert not bad[-1][1]
    small = expansion_check([mpf("0.5"), mpf("1"), mpf("2")], mpf("0.005"), lam)
    assert not small[0][1]


def test_not_flat_enough_breaks_the_chain():
    p = published_params(64)
    with mpmath.workdps(64):
        nudged = PupTentParams(p.z0 + mpf("1e-10"), p.z1, p.z2)
    with pytest.raises(ChainBroken) as excinfo:
        ift_certificate(build_pup_tent(nudged, 64), 64)
    assert excinfo.value.link == "flatness at p <= 1e-15"


def test_verdict_flip_at_doubled_precision_breaks_the_chain(monkeypatch):
    evaluate = ift._evaluate

    def flip_first_link_at_double(c, precision, bound):
        values = evaluate(c, precision, bound)
        if precision == 128:
            name, ok = values.links[0]
            values.links = [(name, not ok), *values.links[1:]]
        return values

    monkeypatch.setattr(ift, "_evaluate", flip_first_link_at_double)
    with pytest.raises(ChainBroken, match="between 64 and 128 digits") as excinfo:
        ift_certificate(published_pup_tent(64), 64)
    assert excinfo.value.link == "flatness at p <= 1e-15"
