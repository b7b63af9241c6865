"""
Structured logging for the toolkit.

stdout carries the JSON-lines report, so every handler configured here writes to
stderr (and optionally a file). Records are rendered as one JSON object each; the
input being processed is attached from ``input_context``.
"""

import contextvars
import json
import logging
import sys
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Union

ROOT_LOGGER_NAME = "stratkit"

# Identifier of the input currently being processed (file:line, category file, ...)
input_context: contextvars.ContextVar[Optional[str]] = contextvars.ContextVar(
    "input_id", default=None
)

# Output key -> LogRecord attribute
_LOCATION_FIELDS = (("module", "module"), ("function", "funcName"), ("line", "lineno"))

_TEXT_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"
_TEXT_FORMAT_WITH_LOCATION = (
    "%(asctime)s %(levelname)-8s %(name)s [%(module)s:%(funcName)s:%(lineno)d]: %(message)s"
)


@contextmanager
def processing(input_id: str) -> Iterator[None]:
    """Attach ``input_id`` to every record logged inside the block."""
    token = input_context.set(input_id)
    try:
        yield
    finally:
        input_context.reset(token)


class JSONFormatter(logging.Formatter):
    """
    Render a record as a single-line JSON object.

    Keys: timestamp, level, logger, message, module/function/line, input, the
    entries of ``extra_data``, exception and process. Any of them can be dropped
    through ``exclude_fields``.
    """

    def __init__(
        self,
        *,
        include_timestamp: bool = True,
        include_location: bool = True,
        include_context: bool = True,
        exclude_fields: Optional[set[str]] = None,
    ):
        super().__init__()
        self.include_timestamp = include_timestamp
        self.include_location = include_location
        self.include_context = include_context
        self.exclude_fields = set(exclude_fields or ())

    def fields(self, record: logging.LogRecord) -> Dict[str, Any]:
        """The key/value pairs of ``record``, before exclusions."""
        fields: Dict[str, Any] = {}
        if self.include_timestamp:
            fields["timestamp"] = datetime.now(timezone.utc).isoformat()
        fields.update(level=record.levelname, logger=record.name, message=record.getMessage())
        if self.include_location:
            fields.update({key: getattr(record, attr) for key, attr in _LOCATION_FIELDS})
        if self.include_context and input_context.get():
            fields["input"] = input_context.get()

        extra = getattr(record, "extra_data", None)
        if isinstance(extra, dict):
            fields.update(extra)

        if record.exc_info:
            exc_type, exc_value, _ = record.exc_info
            fields["exception"] = {
                "type": exc_type.__name__ if exc_type else "Unknown",
                "message": str(exc_value),
                "traceback": self.formatException(record.exc_info).splitlines(),
            }
        fields["process"] = record.process
        return fields

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            key: value
            for key, value in self.fields(record).items()
            if key not in self.exclude_fields
        }
        return self.serialize(payload)

    def serialize(self, payload: Dict[str, Any]) -> str:
        return json.dumps(payload, default=str, ensure_ascii=False)


class PrettyJSONFormatter(JSONFormatter):
    """Indented JSON for interactive runs."""

    def serialize(self, payload: Dict[str, Any]) -> str:
        return json.dumps(payload, indent=2, default=str, ensure_ascii=False)


def _formatter(
    use_json: bool,
    pretty_json: bool,
    include_timestamp: bool,
    include_location: bool,
    include_context: bool,
) -> logging.Formatter:
    if not use_json:
        return logging.Formatter(
            _TEXT_FORMAT_WITH_LOCATION if include_location else _TEXT_FORMAT
        )
    formatter_class = PrettyJSONFormatter if pretty_json else JSONFormatter
    return formatter_class(
        include_timestamp=include_timestamp,
        include_location=include_location,
        include_context=include_context,
    )


def setup_logging(
    level: Union[str, int] = "WARNING",
    *,
    log_file: Optional[Path] = None,
    use_json: bool = True,
    pretty_json: bool = False,
    include_timestamp: bool = True,
    include_location: bool = True,
    include_context: bool = True,
) -> logging.Logger:
    """
    Route all logging to stderr, and to ``log_file`` when given.

    Existing root handlers are replaced. Unknown level names fall back to WARNING.

    Returns:
        The ``stratkit`` logger
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    formatter = _formatter(
        use_json, pretty_json, include_timestamp, include_location, include_context
    )
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))

    root_logger = logging.getLogger()
    root_logger.handlers = []
    root_logger.setLevel(level)
    for handler in handlers:
        handler.setFormatter(formatter)
        handler.setLevel(level)
        root_logger.addHandler(handler)

    logger = get_logger()
    logger.setLevel(level)
    log_with_context(
        logger,
        logging.DEBUG,
        "Logging configured",
        log_level=logging.getLevelName(level),
        json_format=use_json,
        log_file=str(log_file) if log_file else None,
    )
    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """The ``stratkit`` logger, or its child ``stratkit.<name>``."""
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}" if name else ROOT_LOGGER_NAME)


def log_with_context(
    logger: logging.Logger,
    level: int,
    message: str,
    **kwargs: Any,
) -> None:
    """Log ``message`` with ``kwargs`` as extra JSON fields."""
    extra = {"extra_data": kwargs} if kwargs else {}
    logger.log(level, message, extra=extra)


def debug(message: str, **kwargs: Any) -> None:
    log_with_context(get_logger(), logging.DEBUG, message, **kwargs)


def info(message: str, **kwargs: Any) -> None:
    log_with_context(get_logger(), logging.INFO, message, **kwargs)


def warning(message: str, **kwargs: Any) -> None:
    log_with_context(get_logger(), logging.WARNING, message, **kwargs)


def error(message: str, **kwargs: Any) -> None:
    log_with_context(get_logger(), logging.ERROR, message, **kwargs)
