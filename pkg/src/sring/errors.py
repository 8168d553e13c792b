"""Exception types shared across the package."""


class SRingError(Exception):
    """Base class for all errors raised by this package."""


class GroupError(SRingError):
    """Bad group construction or element arithmetic across distinct groups."""


class NotPartition(SRingError):
    """The given sets do not partition the group."""


class IdentityNotSingleton(SRingError):
    """The class containing the identity is not the singleton {e}."""


class NotInverseClosed(SRingError):
    """Some class's inverse set is not itself a class."""


class ProductNotClosed(SRingError):
    """A product of two class sums is not constant on some class.

    Carries the witness (X id, Y id, g, g') with g, g' in one class but
    different multiplicities in X*Y.
    """

    def __init__(self, x_id, y_id, g, g_prime, message=None):
        self.x_id = x_id
        self.y_id = y_id
        self.g = g
        self.g_prime = g_prime
        super().__init__(
            message
            or f"product of classes {x_id},{y_id} separates elements {g} and {g_prime}"
        )


class SectionNotASection(SRingError):
    """U or L is not an A-subgroup (or L is not contained in U)."""


class HNotASubgroup(SRingError):
    """The given subgroup is not an A-subgroup."""


class NotSubgroup(SRingError):
    """Membership test failed: the first group is not contained in the second."""


class DoesNotContainRegular(SRingError):
    """The permutation group does not contain all right translations."""


class IncompatibleSection(SRingError):
    """Generalized wreath operands induce different S-rings on the section."""


class WrongGroupShape(SRingError):
    """The group does not have the shape required by the operation."""


class AutGroupTooLarge(SRingError):
    """Aut(G) enumeration would exceed the configured candidate bound."""
