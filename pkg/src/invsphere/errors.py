"""Exception hierarchy shared across the library.

Exit-code classes used by the CLI:
  * parse/format problems        -> InputFormatError (exit 1)
  * dimension/precondition       -> PreconditionError (exit 2)
  * numeric singularities        -> SingularityError (exit 3)
"""


class InvsphereError(Exception):
    """Base class for all library errors."""


class InputFormatError(InvsphereError):
    """Malformed input file or record."""


class PreconditionError(InvsphereError):
    """A documented precondition of an operation was violated."""


class SingularityError(InvsphereError):
    """The requested computation hits a geometric singularity."""


class DimensionMismatch(PreconditionError):
    pass


class InvalidDirection(PreconditionError):
    """Direction vector is not unit length or has a zero last coordinate."""


class InvalidScale(PreconditionError):
    """Scale factor must be a positive finite real."""


class EmptyDataset(PreconditionError):
    pass


class TooFewPoints(PreconditionError):
    pass


class DegenerateCap(PreconditionError):
    """Cap bias outside (-1, 1); the cap boundary is empty or the full sphere."""


class ZeroVector(PreconditionError):
    pass


class ZeroMean(PreconditionError):
    """Mean vector vanishes; no alignment direction exists."""


class PointAtSouthPole(SingularityError):
    """A point coincides with the inversion singularity at -v."""


class CapContainsSouthPole(SingularityError):
    """The cap covers -v; its image is a ball complement, not a ball."""


class AxisUndefined(SingularityError):
    """The spheroid short axis degenerates for v = (0, ..., 0, +/-1)."""


class AllCosinesZero(SingularityError):
    """Mean squared cosine is zero; its inverse is undefined."""


class ZeroEmbeddedCosine(SingularityError):
    pass
