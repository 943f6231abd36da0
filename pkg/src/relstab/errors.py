"""Exception types shared across the package."""

from __future__ import annotations


class RelstabError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------- linear algebra

class DimensionMismatch(RelstabError):
    pass


class FieldMismatch(RelstabError):
    pass


# ---------------------------------------------------------------- groups

class ClosureBoundExceeded(RelstabError):
    pass


class InvalidPermutation(RelstabError):
    pass


class ValidationFailure(RelstabError):
    """A Cayley-table axiom failed; carries the offending witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------- module context

class RelationViolation(RelstabError):
    pass


class SingularMatrix(RelstabError):
    pass


class KindUnavailable(RelstabError):
    pass


# ---------------------------------------------------------------- complex context

class SquareNonzero(RelstabError):
    """d.d != 0; carries the degree at which the square fails."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class WindowExceeded(RelstabError):
    pass


# ---------------------------------------------------------------- precover / resolutions

class DimensionBudgetExceeded(RelstabError):
    pass


# ---------------------------------------------------------------- localization ladder

class NotFinite(RelstabError):
    """A resolution hit its cap, so no ladder can be built from it."""


class WellDefinednessFailure(RelstabError):
    pass


class CompositeNonzero(RelstabError):
    pass


class FactorizationFailure(RelstabError):
    pass


class ConditionalViolated(RelstabError):
    pass


# ---------------------------------------------------------------- oracles

class BudgetExceeded(RelstabError):
    pass


# ---------------------------------------------------------------- scenarios / CLI

class ParseError(RelstabError):
    """Scenario text could not be tokenized; carries line / column."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class ScenarioValidationError(RelstabError):
    """Scenario parsed but a value is out of bounds; carries the key path."""

    def __init__(self, message: str, key: str):
        super().__init__(f"{key}: {message}")
        self.key = key
