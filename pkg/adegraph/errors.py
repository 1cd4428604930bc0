"""Exception types raised across adegraph."""
from __future__ import annotations

from typing import Any


class AdegraphError(Exception):
    """Base class for every error raised by adegraph."""


# Input and invariant errors --------------------------------------------------

class GraphFormatError(AdegraphError, ValueError):
    """Text input could not be parsed."""


class InvalidGraphError(AdegraphError, ValueError):
    """Parsed input violates a graph invariant (loop, duplicate edge, ...)."""


class UnknownVertexError(InvalidGraphError):
    pass


class SizeBoundError(AdegraphError, ValueError):
    """Input exceeds a configured size bound."""


class DisconnectedGraphError(AdegraphError, ValueError):
    pass


class DimensionMismatchError(AdegraphError, ValueError):
    pass


class ConfigError(AdegraphError, ValueError):
    """A config value has the wrong type or is out of range."""


# Moves --------------------------------------------------------------------

class MoveError(AdegraphError, ValueError):
    """A move cannot be applied to the given graph."""


class NoSuchEdgeError(MoveError):
    def __init__(self, x: int, y: int):
        super().__init__(f"No edge between {x} and {y}")
        self.x = x
        self.y = y


class NotRepresentableError(MoveError):
    def __init__(self, x: int, y: int, witness: int):
        super().__init__(
            f"t-move at ({x}, {y}) is not representable: triangle "
            f"({x}, {y}, {witness}) is not positive"
        )
        self.x = x
        self.y = y
        self.witness = witness


class DegreeTooHighError(MoveError):
    def __init__(self, y: int, degree: int):
        super().__init__(f"t'-move needs deg({y}) <= 3, found {degree}")
        self.y = y
        self.degree = degree


class TranscriptReplayError(MoveError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"Move #{index} is not applicable: {cause}")
        self.index = index
        self.cause = cause


# Reduction ----------------------------------------------------------------

class NotPositiveError(AdegraphError, ValueError):
    """Raised where a positive signed graph is required."""

    def __init__(self, report: Any):
        super().__init__(f"Graph is not positive ({report.verdict.value})")
        self.report = report


class SearchExhaustedError(AdegraphError, RuntimeError):
    """Bounded search ran out of states or budget before reaching its goal."""


# Topology -----------------------------------------------------------------

class BraidSyntaxError(AdegraphError, ValueError):
    pass


class NonPositiveGeneratorError(BraidSyntaxError):
    pass


class IndexOutOfRangeError(BraidSyntaxError):
    pass


class EmbeddingError(InvalidGraphError):
    """Rotation system or direction data does not match the payload graph."""


class EulerViolationError(EmbeddingError):
    pass


class ChecksFailedError(MoveError):
    """Move output admits no checkerboard embedding under the local repair rule."""


class NotCheckerboardError(AdegraphError, ValueError):
    pass
