"""Exception types shared across the package."""


class GsalgError(Exception):
    """Base class for every error this package raises deliberately."""


class MixedFields(GsalgError):
    """Scalars from two different coefficient fields were combined."""


class DivisionByZero(GsalgError, ZeroDivisionError):
    """Division by the zero scalar."""


class AmbientMismatch(GsalgError):
    """Polynomials live over different ambients (variable count or field)."""


class IndexOutOfRange(GsalgError):
    """A variable index points beyond the substitution target list."""


class ParseError(GsalgError):
    """Malformed polynomial text.  `position` is the 1-based column."""

    def __init__(self, message, position):
        super().__init__("%s (column %d)" % (message, position))
        self.position = position


class VariableOutOfRange(ParseError):
    """A parsed variable index lies outside x1..xd."""


class TooLarge(GsalgError):
    """An enumeration or matrix would exceed the configured cap."""


class NonHomogeneousGenerator(GsalgError):
    """An ideal generator mixes degrees (or is zero, so has no degree)."""


class DegreeBelowTwo(GsalgError):
    """An ideal generator has degree 0 or 1."""


class DegreeExceedsTable(GsalgError):
    """A membership query needs degrees beyond the table's maxdeg."""


class InvalidParams(GsalgError):
    """Parameters violate a documented precondition."""


class DimensionBoundViolated(GsalgError):
    """A dimension/relation table contradicts the graded lower bound.

    The bound holds for every table produced by build_table, so this fires
    only on inconsistent externally supplied data.
    """


class ConstantTerm(GsalgError):
    """A polynomial that must lie in T_{>=1} has a constant term."""


class DegreeNotCovered(GsalgError):
    """No blueprint block covers the queried degree."""


class DegreeTooHigh(GsalgError):
    """A polynomial exceeds the degree window it must fit in."""
