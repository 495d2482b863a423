"""Exception types shared by the whole package."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for every error raised by degtensor."""


class DimensionMismatch(AlgebraError):
    """Operands have incompatible dimensions."""


class NonSymmetric(AlgebraError):
    """A Gram matrix is not symmetric."""


class NotOrthogonal(AlgebraError):
    """A basis that must be orthogonal is not."""


class SingularBasis(AlgebraError):
    """A matrix that must be invertible is singular."""


class SpaceMismatch(AlgebraError):
    """Operands live over different spaces or different bases."""


class SlotOutOfRange(AlgebraError):
    """A tensor slot number is outside the tensor's type."""


class BadScreen(AlgebraError):
    """Vectors do not span a valid screen complement of the radical."""


class NotRadicalAnnihilator(AlgebraError):
    """A covariant slot fails the radical-annihilator condition.

    Covariant contraction and screen raising are only defined on slots that
    vanish against every radical vector; anything else would silently depend
    on the choice of screen.
    """

    def __init__(self, slot: int | None = None, message: str | None = None):
        self.slot = slot
        if message is None:
            if slot is None:
                message = "covector is not in the image of the flat map"
            else:
                message = f"covariant slot {slot} is not radical-annihilator"
        super().__init__(message)


class ParseError(AlgebraError):
    """An input file is malformed."""
