"""Exception taxonomy for the toolkit.

Every library-raised error derives from CapqError so callers can catch the
whole family at once. The CLI maps subfamilies onto exit codes: geometry and
numerical failures exit 3, file problems exit 4, argument problems exit 2.
"""


class CapqError(Exception):
    """Base class for all toolkit errors."""


class OverlappingContinua(CapqError):
    """The two continua intersect after rasterization."""


class DegenerateShape(CapqError):
    """A shape has zero area or length."""


class OutOfBounds(CapqError):
    """A bounded shape lies entirely outside the grid bounds."""


class ResolutionTooCoarse(CapqError):
    """The grid cannot separate the continua or keep a slit alive."""


class NonConvergence(CapqError):
    """An iteration exhausted its budget without reaching tolerance."""


class DisconnectedDomain(CapqError):
    """The field region does not separate the two continua."""


class OutOfAnnulus(CapqError):
    """Point outside the closed annulus r <= |z| <= R."""


class LevelNotFound(CapqError):
    """No closed separating level curve exists at the requested level."""


class DegenerateCurve(CapqError):
    """Too few distinct points to form a usable curve."""


class DomainViolation(CapqError):
    """A chain stage received a point outside its domain.

    Carries the 1-based stage index in ``stage``.
    """

    def __init__(self, message, stage):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


class DegenerateJacobian(CapqError):
    """Finite-difference Jacobian determinant is not positive."""


class ValidityCondition(CapqError):
    """A bound's side condition fails for the given input."""


class QuadratureFailure(CapqError):
    """Adaptive quadrature could not reach the requested tolerance."""


class MissingLevel(CapqError):
    """A requested level is not present in the analysis report."""


class IoError(CapqError):
    """File could not be read, parsed, or written."""


class UsageError(CapqError):
    """Command line arguments are invalid."""
