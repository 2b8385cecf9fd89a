"""Exception types shared across the package.

Every error a caller is expected to branch on gets its own class; anything
else surfaces as a plain ValueError/RuntimeError from the raising module.
"""

from __future__ import annotations


class CarverError(Exception):
    """Base class for all package-specific errors."""


class ParseError(CarverError):
    """Source text could not be tokenized or structurally parsed.

    line/column point at the first offending character (1-based).
    """

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class MethodNotFoundError(CarverError):
    """No method in the unit matches the requested name or line."""


class AmbiguousMethodError(CarverError):
    """More than one method matches the requested name."""

    def __init__(self, name: str, count: int) -> None:
        super().__init__(f"method name {name!r} matches {count} declarations; select by line instead")
        self.name = name
        self.count = count


class EmptyRangeError(CarverError):
    """A line range selects no statements of the method body."""


class MethodTooLargeError(CarverError):
    """Host method exceeds the configured prompt budget."""


class ProviderUnreachableError(CarverError):
    """Every sampling attempt against the completion provider failed."""


class MissingFixtureError(CarverError):
    """Replay provider has no recorded completion for a request digest."""

    def __init__(self, digest: str, fixture_dir: str) -> None:
        super().__init__(f"no recorded completion for digest {digest} under {fixture_dir}")
        self.digest = digest
        self.fixture_dir = fixture_dir


class PlanConflictError(CarverError):
    """Chosen extracted-method name would collide with an existing member."""


class StaleUnitError(CarverError):
    """Source file changed between planning and application."""


class RenderError(CarverError):
    """Refactored source failed re-validation; the edit must not be used."""


class EmptyOracleError(CarverError):
    """Evaluation oracle resolves to zero usable entries."""


class InsufficientSamplesError(CarverError):
    """repeated_stats needs at least two recall samples."""
