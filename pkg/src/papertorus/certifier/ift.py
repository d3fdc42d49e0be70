"""Effective inverse function theorem for the pup tent angle map.

On the ball B of radius 1e-13 around p, F - F(p) is (1/4)-expansive with an
angle condition, so F(B) contains the ball of radius 1e-14 around F(p). Since
F(p) is within sqrt(3) * 1e-15 of (2pi, 2pi, 2pi), some p* in B is exactly flat.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import mpmath
from mpmath import mpf

from papertorus.core.errors import ChainBroken
from papertorus.core.models import Configuration, CrudeBoundReport, ExistenceCertificate
from papertorus.core.models.geometry import fmt
from papertorus.geometry.angles import cone_angles
from papertorus.geometry.puptent import params_from_configuration
from papertorus.logging import get_logger
from papertorus.solver.angle_map import jacobian

logger = get_logger(__name__)

M_ENTRIES = (
    ("-0.91", "0.74", "0.39"),
    ("0.74", "-1.92", "1.14"),
    ("0.39", "1.14", "-0.06"),
)
FLATNESS_REQUIRED = "1e-15"
EIGENVALUE_FLOOR = "0.76"
M_EXPANSION = "0.75"
DF_NEAR_M = "0.01"
DRIFT_LIMIT = "0.001"
EXPANSION_LAMBDA = "0.25"
BALL_RADIUS = "1e-13"
SECOND_DERIVATIVE_BOUND = "1e9"


@dataclass
class ChainValues:
    """Quantities of the chain at one working precision."""

    precision: int
    flatness: mpf
    dF: List[List[mpf]]
    eigenvalues: List[mpf]
    min_abs_eigenvalue: mpf
    dF_minus_M: mpf
    drift: mpf
    on_ball: mpf
    sigma_min: mpf
    image_radius: mpf
    links: List[Tuple[str, bool]]


def m_matrix(precision: int = 64) -> mpmath.matrix:
    with mpmath.workdps(precision):
        return mpmath.matrix([[mpf(x) for x in row] for row in M_ENTRIES])


def expansion_check(
    eigenvalues: List[mpf], on_ball: mpf, lam: mpf
) -> List[Tuple[str, bool]]:
    """
    ||M V|| >= 3/4 for unit V and the perturbation E_q = dF_q - M keeps dF_q 2*lam expansive.

    ||E_q V|| <= 3 * ||E_q||_max for unit V, so 3/4 - 3 * on_ball > 2 * lam
    gives ||dF_q V|| > 2 * lam.
    """
    min_abs = min(abs(e) for e in eigenvalues)
    return [
        ("eigenvalues of M exceed 0.76", min_abs > mpf(EIGENVALUE_FLOOR)),
        ("||M V|| >= 3/4", mpf(EIGENVALUE_FLOOR) >= mpf(M_EXPANSION)),
        ("3/4 - 3 ||dF_q - M|| > 2 lambda", mpf(M_EXPANSION) - 3 * on_ball > 2 * lam),
    ]


def _evaluate(c: Configuration, precision: int, second_derivative_bound: mpf) -> ChainValues:
    with mpmath.workdps(precision):
        c = c.with_precision(precision)
        p = params_from_configuration(c)
        m = m_matrix(precision)
        flatness = cone_angles(c).max_deviation
        df = mpmath.matrix(jacobian(p, precision).matrix)
        spectrum = mpmath.eigsy(m, eigvals_only=True)
        eigenvalues = [spectrum[i] for i in range(spectrum.rows)]
        min_abs = min(abs(e) for e in eigenvalues)
        df_minus_m = max(abs(df[i, j] - m[i, j]) for i in range(3) for j in range(3))

        radius = mpf(BALL_RADIUS)
        lam = mpf(EXPANSION_LAMBDA)
        # each entry of dF has gradient norm <= sqrt(3) * bound
        drift = mpmath.sqrt(3) * radius * mpf(second_derivative_bound)
        on_ball = df_minus_m + drift
        singular = mpmath.svd_r(df, compute_uv=False)
        sigma_min = min(singular[i] for i in range(singular.rows))
        image_radius = mpmath.sqrt(3) * flatness

        links = [
            ("flatness at p <= 1e-15", flatness <= mpf(FLATNESS_REQUIRED)),
            ("||dF_p - M|| < 1/100", df_minus_m < mpf(DF_NEAR_M)),
            ("sqrt(3) r B < 1/1000", drift < mpf(DRIFT_LIMIT)),
            ("||dF_q - M|| < 1/90", on_ball < 1 / mpf(90)),
        ]
        links += expansion_check(eigenvalues, on_ball, lam)
        links += [
            ("3 drift < (3/500) sigma_min(dF_p)", 3 * drift < 3 * sigma_min / 500),
            ("sqrt(3) flatness < lambda r", image_radius < lam * radius),
        ]
    return ChainValues(
        precision=precision,
        flatness=flatness,
        dF=[[df[i, j] for j in range(3)] for i in range(3)],
        eigenvalues=eigenvalues,
        min_abs_eigenvalue=min_abs,
        dF_minus_M=df_minus_m,
        drift=drift,
        on_ball=on_ball,
        sigma_min=sigma_min,
        image_radius=image_radius,
        links=links,
    )


def ift_certificate(
    c: Configuration,
    precision: int = 64,
    crude: Optional[CrudeBoundReport] = None,
) -> ExistenceCertificate:
    """
    Run the chain at ``precision`` and again at twice that; verdicts must agree.

    Args:
        c: Pup tent configuration at p
        precision: Working decimal digits
        crude: Crude bound report supplying the second-derivative bound

    Returns:
        ExistenceCertificate with conclusion radius 1e-13

    Raises:
        ChainBroken: a link fails or the doubled-precision verdicts differ
    """
    bound = mpf(crude.second_derivative_bound) if crude else mpf(SECOND_DERIVATIVE_BOUND)
    first = _evaluate(c, precision, bound)
    second = _evaluate(c, 2 * precision, bound)
    for (name, ok), (_, ok2) in zip(first.links, second.links):
        if ok != ok2:
            raise ChainBroken(f"'{name}' flips between {precision} and {2 * precision} digits", link=name)
        if not ok:
            logger.warning("IFT link failed", extra={"event": "ift.link.failed", "link": name})
            raise ChainBroken(f"link '{name}' does not hold", link=name)

    cert = ExistenceCertificate(
        flatness_at_p=fmt(first.flatness, 5),
        flatness_required=FLATNESS_REQUIRED,
        M=[list(row) for row in M_ENTRIES],
        dF=[[fmt(x, 12) for x in row] for row in first.dF],
        eigenvalues_M=[fmt(e, 12) for e in first.eigenvalues],
        min_abs_eigenvalue=fmt(first.min_abs_eigenvalue, 12),
        dF_minus_M_inf=fmt(first.dF_minus_M, 8),
        crude_drift=fmt(first.drift, 8),
        dF_minus_M_inf_on_ball=fmt(first.on_ball, 8),
        min_singular_value_dF=fmt(first.sigma_min, 12),
        expansion_lambda=EXPANSION_LAMBDA,
        ball_radius=BALL_RADIUS,
        image_radius=fmt(first.image_radius, 5),
        conclusion_radius=BALL_RADIUS,
        precision=precision,
        links=first.links,
    )
    logger.info(
        "Existence certified",
        extra={
            "event": "ift.certified",
            "precision": precision,
            "flatness": cert.flatness_at_p,
            "min_abs_eigenvalue": cert.min_abs_eigenvalue,
            "conclusion_radius": cert.conclusion_radius,
        },
    )
    return cert


def chain_table(cert: ExistenceCertificate) -> Dict[str, str]:
    """Footer rows for the certificate bundle."""
    return {
        "flatness_at_p": cert.flatness_at_p,
        "min_abs_eigenvalue": cert.min_abs_eigenvalue,
        "dF_minus_M_inf": cert.dF_minus_M_inf,
        "crude_drift": cert.crude_drift,
        "dF_minus_M_inf_on_ball": cert.dF_minus_M_inf_on_ball,
        "min_singular_value_dF": cert.min_singular_value_dF,
        "expansion_lambda": cert.expansion_lambda,
        "ball_radius": cert.ball_radius,
        "image_radius": cert.image_radius,
        "conclusion_radius": cert.conclusion_radius,
    }
