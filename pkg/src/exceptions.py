#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/exceptions.py

"""
Domain errors.

Every error carries a short ``code`` (the class name unless overridden),
a human readable message and, for parse failures, the character position.
"""

# Standard library imports
from typing import Any, Dict, Optional


class MonocremError(ValueError):
    """Base class of all domain errors."""

    code: str = ""

    def __init__(self, message: str, position: Optional[int] = None) -> None:
        self.message = message
        self.position = position
        if not self.code:
            self.code = type(self).__name__
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        """Return the JSON error object {code, message, position?}."""
        payload: Dict[str, Any] = {"code": self.code, "message": self.message}
        if self.position is not None:
            payload["position"] = self.position
        return payload


class MixedDegrees(MonocremError):
    pass


class DuplicateMonomial(MonocremError):
    pass


class EmptySet(MonocremError):
    pass


class LengthMismatch(MonocremError):
    pass


class DegenerateResult(MonocremError):
    pass


class NotSquarefree(MonocremError):
    pass


class NotNormalized(MonocremError):
    pass


class BadMinorSize(MonocremError):
    pass


class DimensionMismatch(MonocremError):
    pass


class TooLarge(MonocremError):
    pass


class TooFewMonomials(MonocremError):
    pass


class NotSubset(MonocremError):
    pass


class WrongDegree(MonocremError):
    pass


class NotAnEdge(MonocremError):
    pass


class CollapseCollision(MonocremError):
    pass


class NotSquare(MonocremError):
    pass


class NotDB(MonocremError):
    pass


class NotPermutation(MonocremError):
    pass


class PreconditionViolated(MonocremError):
    pass


class EmptyResult(MonocremError):
    pass


class FamilyRequired(MonocremError):
    """A term matrix without a monomial family tag was given to term_rank."""


class IndexOutOfRange(MonocremError):
    pass


class ParseError(MonocremError):
    """Malformed monomial text; ``position`` is the offending character."""

    code = "SyntaxError"


class InvariantViolation(MonocremError):
    """Two criteria that must agree did not."""


class FileNotFound(MonocremError):
    pass


class UnreadableFile(MonocremError):
    """A batch file that is a directory, not permitted, or not valid UTF-8."""


class ExportFailed(MonocremError):
    pass
