"""Shared exception types for the toolkit."""
from __future__ import annotations


class CounqerError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class ValidationError(CounqerError):
    """Invalid argument, malformed value, or violated precondition."""

    code = "validation"


class ParseError(ValidationError):
    """Malformed input document (N-Triples line, TSV row, config section)."""

    code = "parse"


class NotFoundError(CounqerError):
    """Unknown KB id, predicate, or other missing resource."""

    code = "not_found"


class TransportError(CounqerError):
    """HTTP-level failure while talking to a SPARQL endpoint."""

    code = "transport"

    def __init__(self, message: str, status: int | None = None, retriable: bool = True):
        super().__init__(message)
        self.status = status
        self.retriable = retriable


class EndpointTimeoutError(TransportError):
    """The endpoint did not answer within the configured timeout."""

    code = "timeout"


class ProtocolError(CounqerError):
    """Endpoint answered with something that is not SPARQL results JSON."""

    code = "protocol"
