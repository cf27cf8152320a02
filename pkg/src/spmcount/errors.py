"""Exception types shared across the package."""


class SPMCountError(Exception):
    """Base class for package-specific errors."""


class DimensionError(SPMCountError):
    """Operands or family members have incompatible sizes."""


class ShapeError(SPMCountError):
    """A matrix side is not of the required form, e.g. not a perfect square."""


class InvariantError(SPMCountError):
    """A structural invariant of a matrix type does not hold."""


class DisjointnessError(SPMCountError):
    """Two family members share a 1-cell; carries their 1-based positions."""

    def __init__(self, first: int, second: int):
        self.first = first
        self.second = second
        super().__init__(f"family members {first} and {second} are not disjoint")


class GuardError(SPMCountError):
    """A computation was refused because it exceeds the configured size guard."""


class CheckpointError(SPMCountError):
    """A checkpoint file is malformed or belongs to a different run."""
