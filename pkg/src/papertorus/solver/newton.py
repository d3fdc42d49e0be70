"""Arbitrary-precision Newton refinement of the pup tent heights."""

from typing import Optional

import mpmath
from mpmath import mpf

from papertorus.core.errors import NoConvergence, OutsideBasin
from papertorus.core.models import NewtonTrace, PupTentParams
from papertorus.logging import get_logger
from papertorus.solver.angle_map import angle_map, jacobian

logger = get_logger(__name__)

MAX_ITERATIONS = 200
# starting max |theta_k - 2pi| must lie below this
BASIN_RADIUS = "1e-2"


def newton_refine(
    p0: PupTentParams,
    target_flatness: mpf,
    precision: int = 128,
    max_iterations: int = MAX_ITERATIONS,
    trace: Optional[NewtonTrace] = None,
) -> PupTentParams:
    """
    Solve F(p) = (2pi, 2pi, 2pi) by Newton's method at ``precision`` digits.

    Args:
        p0: Starting heights
        target_flatness: Stop once max |theta_k - 2pi| <= this
        precision: Working decimal digits
        max_iterations: Iteration cap
        trace: Optional NewtonTrace receiving the deviation before each step

    Returns:
        Refined PupTentParams (``p0`` itself when it already meets the target)

    Raises:
        OutsideBasin: p0 is not flat to within BASIN_RADIUS
        NoConvergence: the cap was reached first
        SingularMatrix: dF became singular along the way
    """
    trace = trace if trace is not None else NewtonTrace()
    with mpmath.workdps(precision):
        target = mpf(target_flatness)
        p = p0
        two_pi = 2 * mpmath.pi
        for iteration in range(max_iterations + 1):
            values = angle_map(p, precision).values
            residual = [theta - two_pi for theta in values]
            deviation = max(abs(r) for r in residual)
            trace.deviations.append(deviation)
            logger.debug(
                "Newton iteration",
                extra={
                    "event": "newton.iteration",
                    "iteration": iteration,
                    "deviation": mpmath.nstr(deviation, 5),
                },
            )
            if deviation <= target:
                logger.info(
                    "Newton converged",
                    extra={
                        "event": "newton.converged",
                        "iterations": iteration,
                        "deviation": mpmath.nstr(deviation, 5),
                    },
                )
                return p
            if iteration == 0 and deviation >= mpf(BASIN_RADIUS):
                raise OutsideBasin(
                    f"starting deviation {mpmath.nstr(deviation, 5)} is outside the Newton basin "
                    f"({BASIN_RADIUS})",
                    deviation=deviation,
                )
            if iteration == max_iterations:
                break
            dF = mpmath.matrix(jacobian(p, precision).matrix)
            step = mpmath.lu_solve(dF, mpmath.matrix(residual))
            p = PupTentParams(p.z0 - step[0], p.z1 - step[1], p.z2 - step[2])
    raise NoConvergence(
        f"Newton did not reach {mpmath.nstr(target, 3)} in {max_iterations} iterations",
        iterations=max_iterations,
        deviation=deviation,
    )


def truncate_digits(x: mpf, digits: int) -> str:
    """Decimal string of ``x`` truncated (not rounded) after ``digits`` fractional digits."""
    scaled = int(mpmath.floor(abs(x) * mpf(10) ** digits))
    sign = "-" if x < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
