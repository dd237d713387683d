"""Exception hierarchy shared by all chopcone modules."""


class ChopconeError(Exception):
    """Base class for every error raised by this package."""


# exact
class NotSquare(ChopconeError, ValueError):
    pass


class SingularMatrix(ChopconeError, ValueError):
    pass


class NotPointed(ChopconeError, ValueError):
    pass


# polyhedra
class Unbounded(ChopconeError, ValueError):
    pass


class Infeasible(ChopconeError, ValueError):
    pass


class DegenerateBox(ChopconeError, ValueError):
    pass


# csc
class DimensionMismatch(ChopconeError, ValueError):
    pass


class NotBounded(ChopconeError, ValueError):
    """A chopped and sliced cone whose chops are not all bounded."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownTestFunction(ChopconeError, KeyError):
    pass


class RankDeficientQ(ChopconeError, ValueError):
    pass


# vpf
class KernelConditionViolated(ChopconeError, ValueError):
    pass


class NoFit(ChopconeError, ValueError):
    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


# liealg
class NotFiniteType(ChopconeError, ValueError):
    pass


class TooLarge(ChopconeError, ValueError):
    pass


class NotReduced(ChopconeError, ValueError):
    pass


class NotDominant(ChopconeError, ValueError):
    pass


# littelmann / bz
class UnsupportedTypeWord(ChopconeError, ValueError):
    pass


class ValidationFailed(ChopconeError, ValueError):
    pass


class UnsupportedType(ChopconeError, ValueError):
    pass


class WeightNotInRep(ChopconeError, ValueError):
    pass


class NotLongestWord(ChopconeError, ValueError):
    pass
