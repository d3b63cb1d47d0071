"""Exception types and structured non-success results."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class ThetaSatError(Exception):
    """Base class for all package errors."""


class DomainError(ThetaSatError, ValueError):
    """An argument lies outside the domain of an operation."""


class InvalidAssignment(ThetaSatError, ValueError):
    """An assignment violates injectivity or edge preservation."""


class EmptyGraph(ThetaSatError, ValueError):
    pass


class EmptyWeight(ThetaSatError, ValueError):
    pass


class EmptyHypergraph(ThetaSatError, ValueError):
    pass


@dataclass(frozen=True)
class Failure:
    """A constructor could not certify its postcondition.

    ``step`` names the stage that gave up; ``detail`` carries diagnostics.
    """

    step: str
    detail: Any = None

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Exhausted:
    """A backtracking search ran out of candidates or budget."""

    reason: str
    nodes: int = 0

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Truncated:
    """Marker for an enumeration that stopped at its cap."""

    cap: int
    found: int
