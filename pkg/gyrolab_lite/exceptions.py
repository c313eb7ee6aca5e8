"""
gyrolab exception hierarchy and error handling utilities.
"""

from __future__ import annotations

import logging
import traceback
from enum import Enum
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class ErrorCode(Enum):
    """Standard error codes for gyrolab operations."""

    # General errors (1xxx)
    UNKNOWN = 1000
    PARSE_ERROR = 1001
    STRUCTURE_ERROR = 1002
    ELEMENT_OUT_OF_RANGE = 1003

    # Subset errors (2xxx)
    EMPTY_SUBSET = 2000
    NOT_SUBGYROGROUP = 2001

    # Quotient errors (3xxx)
    PARTITION_FAILURE = 3000
    ILL_DEFINED_TRANSLATION = 3001
    PRECONDITION_VIOLATED = 3002

    # Model errors (4xxx)
    OUTSIDE_DOMAIN = 4000

    # Search errors (5xxx)
    RESOURCE_LIMIT = 5000


class GyroError(Exception):
    """Base exception for all gyrolab errors."""

    def __init__(
        self,
        message: str,
        code: ErrorCode = ErrorCode.UNKNOWN,
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None,
    ):
        super().__init__(message)
        self.message = message
        self.code = code
        self.details = details or {}
        self.cause = cause

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to JSON-serializable dict."""
        result = {
            "error": self.__class__.__name__,
            "message": self.message,
            "code": self.code.value,
            "code_name": self.code.name,
        }
        if self.details:
            result["details"] = self.details
        if self.cause:
            result["cause"] = str(self.cause)
        return result

    def log(self, level: int = logging.ERROR):
        """Log this exception with context."""
        logger.log(
            level,
            f"{self.__class__.__name__}: {self.message} (code={self.code.name})",
            extra={"details": self.details, "cause": self.cause},
        )


class TableParseError(GyroError):
    """Malformed table input."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.PARSE_ERROR)
        super().__init__(message, **kwargs)


class TableStructureError(GyroError):
    """A loaded table violates identity, Latin or inverse structure."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.STRUCTURE_ERROR)
        super().__init__(message, **kwargs)


class ElementRangeError(GyroError, IndexError):
    """Element index outside 0..n-1."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.ELEMENT_OUT_OF_RANGE)
        super().__init__(message, **kwargs)


class EmptySubsetError(GyroError):
    def __init__(self, message: str = "subset is empty", **kwargs):
        kwargs.setdefault("code", ErrorCode.EMPTY_SUBSET)
        super().__init__(message, **kwargs)


class NotSubgyrogroupError(GyroError):
    """Operation needs a subgyrogroup and got something else."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.NOT_SUBGYROGROUP)
        super().__init__(message, **kwargs)


class PartitionError(GyroError):
    """Left cosets overlap without being equal."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.PARTITION_FAILURE)
        super().__init__(message, **kwargs)


class IllDefinedTranslationError(GyroError):
    """Coset translation depends on the chosen representative."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.ILL_DEFINED_TRANSLATION)
        super().__init__(message, **kwargs)


class PreconditionError(GyroError):
    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.PRECONDITION_VIOLATED)
        super().__init__(message, **kwargs)


class ModelDomainError(GyroError, ValueError):
    """Point outside the open disk or ball."""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault("code", ErrorCode.OUTSIDE_DOMAIN)
        super().__init__(message, **kwargs)


class ResourceLimitError(GyroError):
    """Requested work exceeds a configured bound."""

    def __init__(self, message: str, limit: int, **kwargs):
        kwargs.setdefault("code", ErrorCode.RESOURCE_LIMIT)
        kwargs.setdefault("details", {})
        kwargs["details"]["limit"] = limit
        super().__init__(message, **kwargs)


def format_exception_details(exc: Exception) -> Dict[str, Any]:
    """Extract detailed information from exception."""
    return {
        "type": type(exc).__name__,
        "message": str(exc),
        "traceback": traceback.format_exc(),
    }
