"""Exception hierarchy.

``CertificationFailure`` subclasses are mathematical outcomes (a bound that
does not hold, a pair without certificate); the CLI maps them to exit code 1.
Everything else deriving from ``PaperTorusError`` signals bad input or a
coding bug.
"""

from typing import Any, Optional


class PaperTorusError(Exception):
    """Base class for all papertorus errors."""


class CertificationFailure(PaperTorusError):
    """A proof or certification step did not go through."""


class InternalInconsistency(PaperTorusError):
    """A computed object violates an invariant that holds by construction."""


class DegenerateTriangle(PaperTorusError):
    """A triangle edge vector is shorter than the working tolerance."""


class GeneralPositionFailure(PaperTorusError):
    """An exact orientation predicate evaluated to zero."""


class NotFlatEnough(PaperTorusError):
    """The configuration is too far from flat for the requested operation."""


class ChainingFailure(PaperTorusError):
    """Slice segments could not be chained into closed loops."""


class SingularMatrix(CertificationFailure):
    """A Jacobian is numerically singular."""


class NoConvergence(CertificationFailure):
    """An iteration hit its cap before reaching the target."""

    def __init__(self, message: str, iterations: int, deviation: Any = None):
        super().__init__(message)
        self.iterations = iterations
        self.deviation = deviation


class OutsideBasin(CertificationFailure):
    """Newton was started too far from flat to be trusted."""

    def __init__(self, message: str, deviation: Any = None):
        super().__init__(message)
        self.deviation = deviation


class SamplingExhausted(PaperTorusError):
    """Rejection sampling hit its attempt cap."""


class InsufficientPrecision(PaperTorusError):
    """Working precision is below what an exact conversion needs."""


class NoCertificateFound(CertificationFailure):
    """No separating direction with the required margin exists on the grid."""

    def __init__(self, message: str, pair: tuple, best_margin: Optional[int] = None):
        super().__init__(message)
        self.pair = pair
        self.best_margin = best_margin


class BoundViolated(CertificationFailure):
    """A crude-bound quantity left its certified window."""

    def __init__(self, message: str, pair: Optional[tuple] = None, value: Any = None):
        super().__init__(message)
        self.pair = pair
        self.value = value


class ChainBroken(CertificationFailure):
    """A link of the inverse-function-theorem chain failed."""

    def __init__(self, message: str, link: str):
        super().__init__(message)
        self.link = link


class ParseError(PaperTorusError):
    """A text artifact does not match its grammar."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
