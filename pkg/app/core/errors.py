"""
Exception hierarchy shared by the geometry library, the CLI and the routers
"""


class GeometryError(Exception):
    """Base class for every error raised by the library"""


class InvalidRootSystemError(GeometryError):
    """Unknown type label or rank out of range"""


class InvalidTwistError(GeometryError):
    """Permutation does not preserve the Cartan matrix"""


class SpecParseError(GeometryError):
    """Malformed system, twist, parabolic or rational literal"""


class ParabolicInclusionError(GeometryError):
    """A required inclusion P ⊆ Q does not hold"""


class GroupBoundExceededError(GeometryError):
    """The Weyl group is larger than the configured bound"""


class OrthogonalityError(GeometryError):
    """Adjacent family values differ by something other than a coroot multiple"""


class BoundarySampleError(GeometryError):
    """A sample landed on a defining hyperplane of the oracle under test"""


class PoleError(GeometryError):
    """Evaluation point lies on a pole hyperplane"""


class UnsupportedTestFunctionError(GeometryError):
    """Symbolic test function outside the polynomial times exp(polynomial) class"""


class FamilyFormatError(GeometryError):
    """Orthogonal family or radicial input file is malformed"""


class DimensionMismatchError(GeometryError):
    """Vectors from different ambient spaces were combined"""


# Erros de entrada (HTTP 400, saída 2 na CLI)
USAGE_ERRORS = (
    SpecParseError,
    InvalidTwistError,
    InvalidRootSystemError,
    FamilyFormatError,
    ParabolicInclusionError,
    DimensionMismatchError,
    UnsupportedTestFunctionError,
    OrthogonalityError,
)
