"""Exception types raised by loaders, classifiers, and searches."""


class StructSpaceError(Exception):
    """Base class for all errors raised by this package."""


# -- group loading / validation ---------------------------------------------

class GroupInputError(StructSpaceError):
    """A group description failed validation."""


class NonAssociative(GroupInputError):
    pass


class NoIdentity(GroupInputError):
    pass


class NotLatinSquare(GroupInputError):
    pass


class GeneratorNotBijective(GroupInputError):
    pass


class OrderMismatch(GroupInputError):
    pass


# -- subgroup / hom machinery ------------------------------------------------

class NotSubgroup(StructSpaceError):
    pass


class NotNormal(StructSpaceError):
    pass


class NotProper(StructSpaceError):
    """The whole group was passed where a proper normal subgroup is required."""


class HomNotSurjective(StructSpaceError):
    pass


class ContractionFails(StructSpaceError):
    """A spectrum member's preimage left the spectrum; carries the witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# -- spectra -------------------------------------------------------------------

class RegRequiresPermGroup(StructSpaceError):
    pass


class PmtvBoundsMissing(StructSpaceError):
    pass


# -- modules -------------------------------------------------------------------

class NotInvertible(StructSpaceError):
    pass


class NotHomomorphism(StructSpaceError):
    pass


class SearchTooLarge(StructSpaceError):
    """A module search or simplicity test exceeded the configured caps."""


# -- topology / reporting -------------------------------------------------------

class NotClosed(StructSpaceError):
    pass


class UnknownFormat(StructSpaceError):
    pass
