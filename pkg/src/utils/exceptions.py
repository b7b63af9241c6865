"""
Custom exception classes for the stratification and finite-structure toolkit.
"""

import json
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional


class StratkitError(Exception):
    """
    Base exception for all toolkit errors.

    Attributes:
        message: Human-readable error message
        error_code: Application-specific error code
        details: Additional error details
        timestamp: When the error occurred
    """

    def __init__(
        self,
        message: str,
        *,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize toolkit exception.

        Args:
            message: Error message
            error_code: Optional error code for categorization
            details: Optional additional error details
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        self.timestamp = datetime.now(timezone.utc).isoformat()

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for JSON serialization."""
        return {
            "error": {
                "type": self.__class__.__name__,
                "code": self.error_code,
                "message": self.message,
                "details": self.details,
            }
        }

    def to_json(self) -> str:
        """Convert exception to JSON string."""
        return json.dumps(self.to_dict(), default=str)

    def __str__(self) -> str:
        """String representation of the exception."""
        if self.details:
            return f"{self.error_code}: {self.message} - {self.details}"
        return f"{self.error_code}: {self.message}"


class ConfigurationError(StratkitError):
    """Raised when there's a configuration issue."""

    def __init__(
        self, message: str, *, config_key: Optional[str] = None, **kwargs: Any
    ):
        details = kwargs.get("details", {})
        if config_key:
            details["config_key"] = config_key
        super().__init__(message, error_code="CONFIG_ERROR", details=details)


class FormulaSyntaxError(StratkitError):
    """Raised when formula text does not match the grammar."""

    def __init__(
        self,
        message: str,
        *,
        line: Optional[int] = None,
        column: Optional[int] = None,
        **kwargs: Any,
    ):
        """
        Initialize syntax error.

        Args:
            message: Error message
            line: 1-based line of the offending token, if known
            column: 1-based column of the offending token, if known
            **kwargs: Additional details
        """
        details = kwargs.get("details", {})
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        super().__init__(message, error_code="SYNTAX_ERROR", details=details)
        self.line = line
        self.column = column


class DialectError(StratkitError):
    """Raised when a formula uses constructs its dialect does not allow."""

    def __init__(
        self,
        message: str,
        *,
        expected: Optional[str] = None,
        found: Optional[str] = None,
        **kwargs: Any,
    ):
        details = kwargs.get("details", {})
        if expected:
            details["expected_dialect"] = expected
        if found:
            details["found"] = found
        super().__init__(message, error_code="DIALECT_ERROR", details=details)


class CaptureError(StratkitError):
    """Raised when a substitution or relativization would capture a variable."""

    def __init__(self, message: str, *, variable: Optional[str] = None, **kwargs: Any):
        details = kwargs.get("details", {})
        if variable:
            details["variable"] = variable
        super().__init__(message, error_code="CAPTURE_ERROR", details=details)
        self.variable = variable


class NotStratifiedError(StratkitError):
    """Raised when an operation requires a stratified formula and gets another."""

    def __init__(
        self,
        message: str = "Formula is not stratified",
        *,
        cycle: Optional[List[Dict[str, Any]]] = None,
        **kwargs: Any,
    ):
        details = kwargs.get("details", {})
        if cycle is not None:
            details["cycle"] = cycle
        super().__init__(message, error_code="NOT_STRATIFIED", details=details)


class SchemaError(StratkitError):
    """Raised when a schema instance cannot be built from the given payload."""

    def __init__(
        self,
        message: str,
        *,
        schema: Optional[str] = None,
        missing: Optional[List[str]] = None,
        **kwargs: Any,
    ):
        details = kwargs.get("details", {})
        if schema:
            details["schema"] = schema
        if missing:
            details["missing_parameters"] = list(missing)
        super().__init__(message, error_code="SCHEMA_ERROR", details=details)


class EvaluationError(StratkitError):
    """Raised when a formula cannot be evaluated in a structure."""

    def __init__(self, message: str, *, name: Optional[str] = None, **kwargs: Any):
        details = kwargs.get("details", {})
        if name:
            details["unresolved"] = name
        super().__init__(message, error_code="EVALUATION_ERROR", details=details)


class StructureError(StratkitError):
    """Raised when a finite structure is malformed or lacks required elements."""

    def __init__(self, message: str, **kwargs: Any):
        super().__init__(
            message, error_code="STRUCTURE_ERROR", details=kwargs.get("details", {})
        )


class PowersetNotPresentError(StructureError):
    """Raised when a structure lacks part of a powerset a check depends on."""

    def __init__(self, message: str, *, element: Optional[str] = None, **kwargs: Any):
        details = kwargs.get("details", {})
        if element is not None:
            details["element"] = element
        super().__init__(message, details=details)


class CategoryError(StratkitError):
    """Raised when category, functor or diagram data is unusable."""

    def __init__(self, message: str, **kwargs: Any):
        super().__init__(
            message, error_code="CATEGORY_ERROR", details=kwargs.get("details", {})
        )


class NonFunctionalError(StratkitError):
    """Raised when a relation supplied where a function is required is not one."""

    def __init__(self, message: str, *, leg: Optional[str] = None, **kwargs: Any):
        details = kwargs.get("details", {})
        if leg is not None:
            details["leg"] = leg
        super().__init__(message, error_code="NON_FUNCTIONAL", details=details)


class FeasibilityError(StratkitError):
    """Raised when a brute-force search would exceed its configured cap."""

    def __init__(
        self,
        message: str,
        *,
        limit: Optional[int] = None,
        requested: Optional[int] = None,
        **kwargs: Any,
    ):
        details = kwargs.get("details", {})
        if limit is not None:
            details["limit"] = limit
        if requested is not None:
            details["requested"] = requested
        super().__init__(
            message,
            error_code=kwargs.get("error_code", "FEASIBILITY_ERROR"),
            details=details,
        )
        self.limit = limit
        self.requested = requested


class CarrierOverflowError(FeasibilityError):
    """Raised when a tagged-pair carrier outgrows the configured closure."""

    def __init__(self, size: int, *, limit: int):
        super().__init__(
            f"Tagged carrier of size {size} exceeds the limit of {limit}",
            limit=limit,
            requested=size,
            error_code="CARRIER_OVERFLOW",
        )


# CLI exit codes per exception family; first match wins
EXIT_CODES: Dict[type, int] = {
    PowersetNotPresentError: 1,
    FormulaSyntaxError: 3,
    DialectError: 3,
    StructureError: 3,
    CategoryError: 3,
    ConfigurationError: 3,
    FeasibilityError: 4,
}


def exit_code_for(exc: BaseException) -> int:
    """
    Map an exception to the CLI exit code contract.

    Args:
        exc: The exception raised while processing an input

    Returns:
        3 for malformed input, 4 for feasibility caps, 1 otherwise
    """
    # pydantic is only needed here to recognise malformed JSON payloads
    from pydantic import ValidationError as PydanticValidationError

    if isinstance(exc, (PydanticValidationError, json.JSONDecodeError, OSError, UnicodeError)):
        return 3
    for exc_class, code in EXIT_CODES.items():
        if isinstance(exc, exc_class):
            return code
    return 1
