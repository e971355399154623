"""Exception hierarchy shared across the package."""

from __future__ import annotations


class WorfEvalError(Exception):
    """Base class for every error raised by worfeval."""


class InvalidGraphError(WorfEvalError):
    """A workflow graph violates a structural invariant."""


class CycleError(InvalidGraphError):
    pass


class DanglingEdgeError(InvalidGraphError):
    pass


class DuplicateIndexError(InvalidGraphError):
    pass


class UnknownNodeError(WorfEvalError, KeyError):
    pass


class IndexMismatchError(WorfEvalError):
    """A chain does not cover exactly the internal nodes of its graph."""


class FormatError(WorfEvalError):
    """Workflow text that does not follow the Node:/Edge: format."""

    CATEGORIES = (
        "missing-node-section",
        "missing-edge-section",
        "bad-edge-token",
        "undefined-node-reference",
        "duplicate-index",
    )

    def __init__(self, category: str, detail: str = "") -> None:
        if category not in self.CATEGORIES:
            raise ValueError(f"unknown format error category {category!r}")
        self.category = category
        self.detail = detail
        super().__init__(f"{category}: {detail}" if detail else category)

    def __reduce__(self):
        return (type(self), (self.category, self.detail))


class SchemaError(WorfEvalError):
    def __init__(self, line: int, field: str, detail: str = "") -> None:
        self.line = line
        self.field = field
        self.detail = detail
        msg = f"line {line}: field {field!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)

    def __reduce__(self):
        return (type(self), (self.line, self.field, self.detail))


class ProviderError(WorfEvalError):
    """A similarity provider could not produce a score."""


class ServiceError(ProviderError):
    """The embedding service failed or returned a malformed response."""


class JoinError(WorfEvalError):
    """A prediction id has no matching gold sample."""


class MissingDurationError(WorfEvalError, KeyError):
    pass


class ZeroDurationError(WorfEvalError, ValueError):
    pass


class TooLargeError(WorfEvalError, ValueError):
    """Instance exceeds the size an exhaustive oracle accepts."""
