"""Exception hierarchy shared by every module of the package."""


class BiserialError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    code = "BiserialError"

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class QuiverError(BiserialError):
    code = "QuiverError"


class QuiverParseError(BiserialError):
    code = "ParseError"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class NonMonomialRelations(BiserialError):
    code = "NonMonomialRelations"


class NotCompleteGentle(BiserialError):
    code = "NotCompleteGentle"


class CompletionFailed(BiserialError):
    code = "CompletionFailed"


class NoSolution(BiserialError):
    code = "NoSolution"


class InvalidRankSequence(BiserialError):
    code = "InvalidRankSequence"


class BudgetExceeded(BiserialError):
    code = "BudgetExceeded"


class ShapeMismatch(BiserialError):
    code = "ShapeMismatch"


class SplitInconclusive(BiserialError):
    code = "SplitInconclusive"


class Unidentified(BiserialError):
    code = "Unidentified"


class InvalidWord(BiserialError):
    code = "InvalidWord"


class ThetaMismatch(BiserialError):
    code = "ThetaMismatch"


class GenericPointUnstable(BiserialError):
    code = "GenericPointUnstable"


class SummandNotStable(BiserialError):
    code = "SummandNotStable"


class SamplingFailed(BiserialError):
    code = "SamplingFailed"


class InconsistentData(BiserialError):
    code = "InconsistentData"
