"""Exception hierarchy.

Input problems derive from ``InputError`` (a ``ValueError``); broken theorem
contracts derive from ``TheoremViolation`` and indicate a bug in this package.
"""


class TropmatError(Exception):
    pass


class InputError(TropmatError, ValueError):
    pass


class EmptyBases(InputError):
    pass


class MixedCardinality(InputError):
    pass


class ExchangeFailure(InputError):
    """Basis exchange fails; ``witness`` is ``(B1, B2, i)`` as element tuples."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class RankOutOfRange(InputError):
    pass


class GroundSetMismatch(InputError):
    pass


class NotABasis(InputError):
    pass


class ElementInBasis(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotSquare(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class WideMatrix(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class ZeroMultivector(InputError):
    pass


class NotPlucker(InputError):
    pass


class ZeroWedge(InputError):
    pass


class ZeroPluckerVector(InputError):
    pass


class EmptyFiber(InputError):
    pass


class NotSufficientlyMoveable(InputError):
    pass


class NotAQuotient(InputError):
    pass


class PreconditionUnmet(InputError):
    pass


class UnknownSuite(InputError):
    pass


class BudgetExceeded(InputError):
    pass


class DimensionBudgetExceeded(BudgetExceeded):
    pass


class SizeBudgetExceeded(BudgetExceeded):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.message = message
        self.line = line
        self.column = column


class TheoremViolation(TropmatError):
    pass


class EquivalenceViolation(TheoremViolation):
    pass


class WitnessSearchExhausted(TheoremViolation):
    pass
