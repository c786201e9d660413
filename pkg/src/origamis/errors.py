"""Exception types shared across the package."""


class OrigamiError(Exception):
    """Base class for all library errors."""


class NotPermutation(OrigamiError):
    """Malformed image list: not a bijection of [0, n)."""


class NotTransitive(OrigamiError):
    """The group generated by r and u does not act transitively."""


class UnknownName(OrigamiError):
    """Unknown catalog name."""


class EvenQ(OrigamiError):
    """The q-family is only defined for odd q >= 3."""


class UnpairedSides(OrigamiError):
    """Polygon sides do not match up into translated opposite pairs."""


class NotSimple(OrigamiError):
    """Polygon boundary self-intersects."""


class NotAbsolute(OrigamiError):
    """Chain has nonzero boundary where an absolute class is required."""


class NotInVeechGroup(OrigamiError):
    """Matrix does not stabilize the origami's isomorphism class."""


class NotAutomorphism(OrigamiError):
    """Permutation does not commute with r and u."""


class NotInvariant(OrigamiError):
    """Subspace is not preserved by the given map."""


class OrderExceedsCap(OrigamiError):
    """Element order exceeds the provided cap."""


class NotInCyclicImage(OrigamiError):
    """Action on the tau subspace is not a power of the cyclic generator."""


class NotD4(OrigamiError):
    """Vector set is not a D4 root system."""


class NotInAut(OrigamiError):
    """Matrix does not preserve the root system."""


class ActionNotFinite(OrigamiError):
    """Action has infinite image; congruence accounting impossible."""


class EvenConeMultiplicity(OrigamiError):
    """Index parity is ill-defined: some cone angle is an even multiple of 2*pi."""


class NotClosed(OrigamiError):
    """Edge walk does not close up."""


class OddOrderZeros(OrigamiError):
    """Spin parity requires all zero orders to be even."""


class NotUnimodular(OrigamiError):
    """Antisymmetric Gram matrix has determinant != +-1."""


class ProbeMovesMarks(OrigamiError):
    """A probe lift does not fix every marked vertex class."""


class WrongSurface(OrigamiError):
    """Operation is specific to a catalog surface and got something else."""
