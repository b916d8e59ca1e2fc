"""Exception types shared across modules."""

from .ffla import ImageOutsideTarget


class MrcLabError(Exception):
    pass


class NonInjectiveParametrization(MrcLabError):
    pass


class TooFewPoints(MrcLabError):
    pass


class ExhaustedRetries(MrcLabError):
    pass


class NotVeryAmple(MrcLabError):
    pass


class DegreeGuardViolated(MrcLabError):
    """Forms of the requested degree cannot be separated from the curve ideal
    using the available rational points."""


class GammaTooSmall(MrcLabError):
    pass


class DomainViolation(MrcLabError, ValueError):
    pass


class IdentityViolation(MrcLabError, AssertionError):
    pass


class InconsistentSystem(IdentityViolation):
    pass


class NIndependenceViolation(IdentityViolation):
    pass


__all__ = [
    "MrcLabError",
    "NonInjectiveParametrization",
    "TooFewPoints",
    "ExhaustedRetries",
    "NotVeryAmple",
    "DegreeGuardViolated",
    "GammaTooSmall",
    "DomainViolation",
    "IdentityViolation",
    "InconsistentSystem",
    "NIndependenceViolation",
    "ImageOutsideTarget",
]
