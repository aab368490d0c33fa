"""Exception hierarchy shared by every module."""


class FakeprodError(Exception):
    """Base class for all library errors."""


class ValidationError(FakeprodError, ValueError):
    """Input failed a structural or mathematical check."""


class NotSquarefree(ValidationError):
    pass


class NotTotallyReal(ValidationError):
    pass


class DiscMismatch(ValidationError):
    pass


class Reducible(ValidationError):
    pass


class DivisionByZero(FakeprodError, ZeroDivisionError):
    pass


class ZeroDivisor(FakeprodError, ArithmeticError):
    """A nonzero element had no inverse, so the defining polynomial is reducible."""


class IndexDivisible(FakeprodError):
    """p divides the index of Z[theta], so Kummer-Dedekind does not apply."""


class MissingSplitting(FakeprodError):
    """No backend could decompose a prime."""


class AmbiguousReconstruction(FakeprodError, ArithmeticError):
    pass


class OddCharacter(ValidationError):
    pass


class UnsupportedS(ValidationError):
    pass


class ParityViolation(ValidationError):
    pass


class NotDivision(ValidationError):
    pass


class UnknownIdealTag(ValidationError):
    pass


class UndeterminedTorsion(FakeprodError):
    pass


class OddDimension(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RegressionMismatch(FakeprodError):
    """Verdicts differ from the expected ones; ``rows`` are the offending rows and
    ``report`` the full set of judged rows."""

    def __init__(self, message, rows=(), report=None):
        self.rows = list(rows)
        self.report = report
        super().__init__(message)
