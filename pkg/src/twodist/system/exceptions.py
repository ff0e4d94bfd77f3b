"""Module specific exceptions"""

from typing import Any, Optional, Tuple

__all__ = [
    "VerificationError",
    "CodeSizeMismatch",
    "NotEquitable",
    "AnnihilationFails",
    "MultiplicityMismatch",
    "InexactDivision",
    "NotPSD",
    "NotPositiveDefinite",
    "DimensionMismatch",
    "ConstructionFailed",
    "RootNotFound",
    "PartNotOrthogonal",
    "NotTwoDistance",
    "RankMismatch",
    "CountMismatch",
    "UnexpectedSurvivor",
    "MissingExpectedSurvivor",
    "IdentityFails",
    "CacheInvalid",
    "SchemaError",
    "ConfigurationError",
    "UnknownStage",
]


class VerificationError(Exception):
    """A certified claim does not hold"""

    def __init__(self, message="Verification failed."):
        super().__init__(message)


class CodeSizeMismatch(VerificationError):
    """The code does not have the expected number of codewords"""

    def __init__(self, message="Unexpected number of codewords."):
        super().__init__(message)


class NotEquitable(VerificationError):
    """Vertex partition is not equitable"""

    def __init__(self, message="The vertex partition is not equitable."):
        super().__init__(message)


class AnnihilationFails(VerificationError):
    """The polynomial does not annihilate the matrix"""

    def __init__(self, message="Polynomial does not annihilate the matrix."):
        super().__init__(message)


class MultiplicityMismatch(VerificationError):
    """Eigenvalue multiplicities are inconsistent with the matrix dimension or trace"""

    def __init__(self, message="Eigenvalue multiplicities are inconsistent."):
        super().__init__(message)


class InexactDivision(VerificationError):
    """A fraction-free elimination step produced a non-zero remainder"""

    def __init__(self, message="Fraction-free elimination step is not exact."):
        super().__init__(message)


class NotPSD(VerificationError):
    """Gram matrix is not positive semi-definite"""

    def __init__(self, message="Gram matrix is not positive semi-definite."):
        super().__init__(message)


class NotPositiveDefinite(VerificationError):
    """Gram matrix is not positive definite"""

    def __init__(self, message="Gram matrix is not positive definite."):
        super().__init__(message)


class DimensionMismatch(ValueError):
    """Shapes of the operands do not match"""

    def __init__(self, message="Dimension mismatch."):
        super().__init__(message)


class ConstructionFailed(VerificationError):
    """The point set could not be constructed as prescribed"""

    def __init__(self, message="Construction failed."):
        super().__init__(message)


class RootNotFound(VerificationError):
    """The lattice does not contain a unique pair of norm 2 vectors"""

    def __init__(self, message="Switching root is not unique or does not exist."):
        super().__init__(message)


class PartNotOrthogonal(VerificationError):
    """Points of a multipartite part are not pairwise orthogonal"""

    def __init__(self, message="Points of the part are not pairwise orthogonal."):
        super().__init__(message)


class NotTwoDistance(VerificationError):
    """A pair of points has a squared distance outside of the allowed set"""

    def __init__(
        self,
        pair: Optional[Tuple[Any, Any]] = None,
        value: Any = None,
        message: Optional[str] = None,
    ):
        self.pair = pair
        self.value = value
        super().__init__(
            message or f"Squared distance {value} between {pair} is not allowed."
        )


class RankMismatch(VerificationError):
    """Lattice rank differs from the expected one"""

    def __init__(self, message="Unexpected lattice rank."):
        super().__init__(message)


class CountMismatch(VerificationError):
    """Enumeration count differs from the expected one"""

    def __init__(self, message="Unexpected number of short vectors."):
        super().__init__(message)


class UnexpectedSurvivor(VerificationError):
    """A vector passed an admissibility test it should have failed"""

    def __init__(self, vector: Any = None, message: Optional[str] = None):
        self.vector = vector
        super().__init__(message or f"Unexpected admissible vector: {vector}.")


class MissingExpectedSurvivor(VerificationError):
    """The expected admissible vector was not found"""

    def __init__(self, message="Expected admissible vector has not been found."):
        super().__init__(message)


class IdentityFails(VerificationError):
    """An algebraic identity fails for a point"""

    def __init__(self, point: Any = None, message: Optional[str] = None):
        self.point = point
        super().__init__(message or f"Identity fails for {point}.")


class CacheInvalid(Exception):
    """Cached artifact does not match its recorded hash"""

    def __init__(self, message="Cached artifact is invalid."):
        super().__init__(message)


class SchemaError(Exception):
    """Artifact written with an incompatible schema"""


class ConfigurationError(ValueError):
    """Invalid pipeline configuration"""


class UnknownStage(ConfigurationError):
    """Unknown pipeline stage"""
