"""Unit tests for the crude second-derivative bound."""

import mpmath
import pytest

from papertorus.certifier.bounds import (
    CROSS_WINDOW,
    VECTOR_WINDOW,
    crude_bound_certificate,
    eval_g_bounds,
    g_terms,
    relevant_vector_pairs,
    vector_bounds_check,
)
from papertorus.core.errors import BoundViolated
from papertorus.geometry.puptent import published_pup_tent


@pytest.fixture(scope="module")
def pup_tent():
    return published_pup_tent(64)


def test_relevant_vector_pairs(pup_tent):
    pairs = list(relevant_vector_pairs(pup_tent))
    assert len(pairs) == 96
    face, apex, (i, j), v1, v2 = pairs[0]
    assert {apex, i, j} == set(pup_tent.triangulation.faces[face])


def test_vector_windows_hold(pup_tent):
    report = vector_bounds_check(pup_tent)
    assert len(report.vector_bounds) == 96
    assert VECTOR_WINDOW[0] < report.min_vector_norm <= report.max_vector_norm < VECTOR_WINDOW[1]
    assert CROSS_WINDOW[0] < report.min_cross_norm <= report.max_cross_norm < CROSS_WINDOW[1]
    assert report.slack == pytest.approx(1e-3)


def test_g_bounds_hold(pup_tent):
    report = eval_g_bounds(pup_tent)
    assert 0 < report.g12_max < 10
    assert report.g11_max < 1e14
    assert report.n_max < 10**3.5
    assert report.d_min > 1e-7


def test_crude_bound_certificate(pup_tent):
    report = crude_bound_certificate(pup_tent)
    assert report.friendly_term_count_bound == 48
    assert report.friendly_term_count_bound * report.friendly_term_bound < report.second_derivative_bound
    assert report.second_derivative_bound == pytest.approx(1e9)
    assert report.vector_bounds
    assert report.g12_max > 0


def test_shrunken_configuration_violates_the_windows(pup_tent):
    with mpmath.workdps(64):
        small = pup_tent.with_coordinates(
            tuple(tuple(x / 10 for x in point) for point in pup_tent.coordinates)
        )
    with pytest.raises(BoundViolated) as excinfo:
        vector_bounds_check(small)
    face, apex, i, j = excinfo.value.pair
    assert {apex, i, j} == set(pup_tent.triangulation.faces[face])


def test_g_terms_of_an_orthogonal_pair():
    with mpmath.workdps(64):
        v1 = (mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0))
        v2 = (mpmath.mpf(0), mpmath.mpf(1), mpmath.mpf(0))
        g11, g12, n, d = g_terms(v1, v2)
        assert n == 0
        assert g11 == 0
        assert g12 == 1
        assert d == 1
