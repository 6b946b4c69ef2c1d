"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
front end can report it without string matching.
"""

from __future__ import annotations


class SoagError(Exception):
    """Base class for all package errors."""

    code = "error"


class MathPreconditionError(SoagError):
    """A mathematical precondition of an operation does not hold."""

    code = "math-precondition"


class NotPrime(MathPreconditionError):
    code = "NotPrime"


class DegreeZero(MathPreconditionError):
    code = "DegreeZero"


class OrderTooLarge(MathPreconditionError):
    code = "OrderTooLarge"


class FieldMismatch(MathPreconditionError):
    code = "FieldMismatch"


class DivisionByZero(MathPreconditionError, ZeroDivisionError):
    code = "DivisionByZero"


class NotASubfieldTower(MathPreconditionError):
    code = "NotASubfieldTower"


class ZeroPolynomial(MathPreconditionError):
    code = "ZeroPolynomial"


class DuplicatePoint(MathPreconditionError):
    code = "DuplicatePoint"


class CoefficientsNotInSubfield(MathPreconditionError):
    code = "CoefficientsNotInSubfield"


class CurveError(MathPreconditionError):
    """The pair (F, H) does not define an admissible curve."""


class DerivativeNotConstant(CurveError):
    code = "DerivativeNotConstant"


class CharDividesDegH(CurveError):
    code = "CharDividesDegH"


class NoOnePlaceCriterion(CurveError):
    code = "NoOnePlaceCriterion"


class DegreesNotCoprime(CurveError):
    code = "DegreesNotCoprime"


class IsALine(CurveError):
    code = "IsALine"


class HypothesisViolated(MathPreconditionError):
    code = "HypothesisViolated"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class OutOfRange(MathPreconditionError):
    code = "OutOfRange"


class ShapeMismatch(MathPreconditionError):
    code = "ShapeMismatch"


class NotAQuadraticExtension(MathPreconditionError):
    code = "NotAQuadraticExtension"


class MatrixGate(MathPreconditionError):
    code = "MatrixGate"


class MOutOfRange(MathPreconditionError):
    code = "MOutOfRange"


class HermitianUnavailable(MathPreconditionError):
    code = "HermitianUnavailable"


class TooManyCodewords(MathPreconditionError):
    code = "TooManyCodewords"


class NegativeK(MathPreconditionError):
    code = "NegativeK"


class PreconditionViolated(MathPreconditionError):
    code = "PreconditionViolated"


class Unsupported(MathPreconditionError):
    code = "Unsupported"


class NotApplicable(MathPreconditionError):
    code = "NotApplicable"


class ParseError(SoagError):
    code = "ParseError"
