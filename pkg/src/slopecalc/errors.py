"""Exception hierarchy shared by the library and the command line."""


class SlopeError(Exception):
    """Base class for every error raised by slopecalc."""


class SchemaError(SlopeError, ValueError):
    """Malformed input data (JSON documents, point lists, matrices)."""


class DimensionMismatchError(SlopeError, ValueError):
    pass


class LevelMismatchError(SlopeError, ValueError):
    """Slope data measured against different powers of Frobenius were combined."""


class IndivisibleMultiplicityError(SlopeError, ValueError):
    """A multiplicity is not divisible by the requested number of factors."""


class DegenerateHullError(SlopeError, ValueError):
    """An endpoint of a Newton polygon has infinite valuation."""


class SearchSpaceError(SlopeError, ValueError):
    """A brute-force enumeration would exceed its configured ceiling."""


class InvalidDatumError(SlopeError, ValueError):
    pass


class PrecisionError(SlopeError, ArithmeticError):
    """The working precision is too small to decide a valuation.

    ``suggested_precision`` is a larger number of p-adic digits that the
    caller may retry with.
    """

    def __init__(self, message, suggested_precision=None):
        super().__init__(message)
        self.suggested_precision = suggested_precision
