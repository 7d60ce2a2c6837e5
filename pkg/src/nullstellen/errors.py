"""Exception types.

Every exception carries a short machine-readable ``kind`` which the command
line front end prints as ``error:<kind>:<message>``.
"""

from __future__ import annotations


class AlgebraError(Exception):
    kind = "error"


class ZeroPolynomial(AlgebraError, ValueError):
    kind = "zero-polynomial"


class DivisionByZero(AlgebraError, ZeroDivisionError):
    kind = "division-by-zero"


class VariableOutsideOrder(AlgebraError, ValueError):
    kind = "variable-outside-order"


class ParseError(AlgebraError, ValueError):
    """Malformed expression text; ``position`` is a 0-based character offset."""

    kind = "syntax"

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariable(AlgebraError, ValueError):
    kind = "unknown-variable"


class NegativeExponent(ParseError):
    kind = "negative-exponent"


class IdealFileError(AlgebraError, ValueError):
    kind = "ideal-file"


class PartialPoint(AlgebraError, ValueError):
    kind = "partial-point"


class EmptyPointSet(AlgebraError, ValueError):
    kind = "empty-point-set"


class NotUnitContraction(AlgebraError):
    kind = "not-unit-contraction"


class NotMaximal(AlgebraError):
    kind = "not-maximal"


class NotCheckable(AlgebraError):
    kind = "not-checkable"

    def __init__(self, reason: str, message: str | None = None):
        self.reason = reason
        super().__init__(message or reason)


class InvalidCertificate(AlgebraError, ValueError):
    kind = "invalid-certificate"

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class NonSplit(AlgebraError):
    kind = "non-split"


class MissingRootVariable(AlgebraError, KeyError):
    kind = "missing-root-variable"

    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class NotASuperset(AlgebraError, ValueError):
    kind = "not-a-superset"
