"""Exception hierarchy shared by all tracecity modules.

``InputDataError`` subclasses signal broken input documents (CLI exit
code 2); ``LookupFailure`` subclasses signal queries against ids or
qualified names that do not exist (HTTP 404).
"""

from __future__ import annotations


class TraceCityError(Exception):
    """Base class for every error raised by this package."""


class InputDataError(TraceCityError):
    """Input document (code-model JSON or Scrum XML) is invalid."""


class SchemaError(InputDataError):
    """Document is well-formed but violates the expected structure."""

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class BadIdentifier(InputDataError):
    """A name segment does not match the identifier grammar."""


class DuplicateName(InputDataError):
    """Two sibling code artefacts share a name."""


class XmlError(InputDataError):
    """Scrum XML is not well-formed."""

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        where = source or "<xml>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


class DuplicateFeatureId(InputDataError):
    """The same feature id occurs twice in the merged dataset."""


class EmptyModel(InputDataError):
    """Simulation requires a code model with at least one class."""


class LookupFailure(TraceCityError):
    """A query names an id or qualified name that does not exist."""


class UnknownId(LookupFailure):
    """Unknown feature / sprint / release id."""


class UnknownQName(LookupFailure):
    """Qualified name does not resolve in the code model."""


class NotAClass(LookupFailure):
    """Operation requires a class-level qualified name."""


class UnknownSelection(LookupFailure):
    """Selection is missing or references unknown ids."""


class OutOfRange(TraceCityError):
    """Numeric argument outside its documented domain."""


class EmptyQuery(TraceCityError):
    """Search query is empty after trimming."""
