"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`KreinError`,
so callers can separate domain failures from programming errors.
"""


class KreinError(Exception):
    """Base class for all package errors."""


class DimensionError(KreinError, ValueError):
    """Shapes of vectors or matrices do not fit together."""


class SymmetryError(KreinError, ValueError):
    """The supplied matrix is not a fundamental symmetry (Hermitian involution)."""


class ClassificationError(KreinError):
    """A subspace does not have the sign behaviour an operation requires."""


class GeometryError(KreinError):
    """Subspaces are not in the position an operation requires
    (not complementary, not uniformly definite, no angular operator, ...)."""


class NotAFrameError(KreinError):
    """The family does not span the ambient space."""


class NotAJFrameError(KreinError):
    """The family is not a J-frame."""


class NeutralVectorError(KreinError):
    """The family contains J-neutral vectors.

    The offending positions are stored in ``indices``.
    """

    def __init__(self, msg, indices):
        super().__init__(msg)
        self.indices = tuple(indices)


class OperatorError(KreinError):
    """An operator is not invertible, not J-selfadjoint or not J-positive where required."""


class NotSurjectiveError(KreinError):
    """A synthesis operator is not onto."""


class PreconditionError(KreinError, ValueError):
    """Inputs are inconsistent with each other (bad split, bad partition, ...)."""
