"""Exception hierarchy.

Everything raised on purpose derives from EngineError so callers can catch
one type at the CLI boundary.  ParseError carries a location because input
files are hand-written and "bad rational somewhere" is useless.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class InputError(EngineError):
    """Malformed caller input: bad indices, wrong lengths, bad flags."""


class DimensionMismatch(InputError):
    """Operands live over algebras or contexts of different shape."""


class CatalogError(InputError):
    """Unknown catalog name or parameters outside the family's range."""


class GradingError(InputError):
    """Grading labels do not cover the basis, overlap, or misbehave."""


class RepresentationError(InputError):
    """A matrix representation fails the relation it was declared with."""


class SectionError(InputError):
    """Pullback data where the section is not a right inverse."""


class ContextError(InputError):
    """Form built over one exterior context used in another."""


class MissingInvolution(InputError):
    """Cayley-Dickson step requested on an algebra with no involution."""


class AmbiguousPowerError(EngineError):
    """Requested a single wedge power value but parenthesizations differ.

    Carries the witness schemes so the caller can see which two groupings
    disagree.
    """

    def __init__(self, message: str, schemes: tuple[str, str] | None = None):
        super().__init__(message)
        self.schemes = schemes


class ConsistencyError(EngineError):
    """Internal cross-check contradiction.

    Raised when two independent routes to the same fact disagree, e.g. a
    certificate-backed verdict contradicted by direct generic vanishing.
    Never downgraded to a warning.
    """


class ParseError(InputError):
    """Input text rejected, with position and a machine-readable kind.

    kind is one of: syntax, range, duplicate, rational, schema.
    """

    KINDS = ("syntax", "range", "duplicate", "rational", "schema")

    def __init__(self, message: str, line: int = 0, column: int = 0,
                 kind: str = "syntax"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown ParseError kind {kind!r}")
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.kind = kind

    def __str__(self) -> str:
        if self.line:
            return f"{self.line}:{self.column}: {self.kind}: {self.message}"
        return f"{self.kind}: {self.message}"
