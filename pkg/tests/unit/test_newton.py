"""Unit tests for Newton refinement of the pup tent heights."""

import mpmath
import pytest
from mpmath import mpf

from papertorus.core.errors import NoConvergence, OutsideBasin
from papertorus.core.models import NewtonTrace, PupTentParams
from papertorus.geometry.puptent import PUBLISHED_Z
from papertorus.solver.newton import newton_refine, truncate_digits


def _eight_digit_start() -> PupTentParams:
    with mpmath.workdps(128):
        return PupTentParams.from_values(*(truncate_digits(mpf(z), 8) for z in PUBLISHED_Z), precision=128)


def test_truncate_digits():
    with mpmath.workdps(64):
        assert truncate_digits(mpf(PUBLISHED_Z[0]), 8) == "0.98050571"
        assert truncate_digits(mpf("-1.2399"), 2) == "-1.23"
        assert truncate_digits(mpf("3"), 3) == "3.000"


def test_newton_recovers_published_digits():
    trace = NewtonTrace()
    solution = newton_refine(_eight_digit_start(), mpf("1e-60"), precision=128, trace=trace)
    assert trace.iterations <= 20
    assert trace.deviations[-1] <= mpf("1e-60")
    with mpmath.workdps(128):
        digits = tuple(truncate_digits(z, 32) for z in solution.as_tuple())
    assert digits == PUBLISHED_Z


def test_newton_converges_quadratically():
    trace = NewtonTrace()
    newton_refine(_eight_digit_start(), mpf("1e-100"), precision=128, trace=trace)
    # deviations fall monotonically once Newton is in its basin
    tail = [d for d in trace.deviations if d > mpf("1e-120")]
    for before, after in zip(tail[1:], tail[2:]):
        assert after < before


def test_already_flat_start_is_returned_unchanged():
    start = _eight_digit_start()
    trace = NewtonTrace()
    assert newton_refine(start, mpf(1), precision=64, trace=trace) is start
    assert trace.iterations == 0


def test_iteration_cap_raises():
    with pytest.raises(NoConvergence) as excinfo:
        newton_refine(_eight_digit_start(), mpf("1e-100"), precision=128, max_iterations=1)
    assert excinfo.value.iterations == 1
    assert excinfo.value.deviation > mpf("1e-100")


def test_start_outside_the_basin_is_refused():
    start = PupTentParams.from_values("0.9", PUBLISHED_Z[1], PUBLISHED_Z[2], precision=64)
    trace = NewtonTrace()
    with pytest.raises(OutsideBasin) as excinfo:
        newton_refine(start, mpf("1e-60"), precision=64, trace=trace)
    assert excinfo.value.deviation >= mpf("1e-2")
    assert trace.iterations == 0
