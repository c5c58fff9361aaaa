class CernyLabError(Exception):
    """Base class for every error raised by cerny_lab"""


class AutomatonParseError(CernyLabError, ValueError):
    """Raised when automaton text cannot be parsed. ``line`` is 1-indexed, 0 when unknown"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class InvalidAutomatonError(CernyLabError, ValueError):
    pass


class FamilyParameterError(CernyLabError, ValueError):
    pass


class WeightTooHigh(CernyLabError):
    """A critical column of weight three or more makes the support lemma inapplicable"""

    def __init__(self, column_index: int, weight: int):
        self.column_index = column_index
        self.weight = weight
        super().__init__(
            f"critical column {column_index} has weight {weight}; "
            "canonical supports only exist below the triple rendezvous time"
        )


class InvalidDecomposition(CernyLabError, ValueError):
    pass


class LinearProgramError(CernyLabError):
    pass


class Infeasible(LinearProgramError):
    pass


class Unbounded(LinearProgramError):
    pass


class DimensionMismatch(CernyLabError, ValueError):
    pass


class BoundParameterError(CernyLabError, ValueError):
    pass


class InvariantViolation(CernyLabError):
    """A certificate that must hold exactly did not"""
