"""
Base command class for the CLI subcommands.

This module provides the abstract base class and the shared plumbing of every
subcommand: reading inputs, timing, error capture and batch execution.
"""

import time
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Callable, ClassVar, Dict, List, Optional, Tuple, Type

from src.config import get_settings
from src.logic.parser import iter_sources
from src.logic.syntax import Dialect
from src.models import RunOptions, RunRecord
from src.utils.batch import run_batch
from src.utils.exceptions import StratkitError, exit_code_for
from src.utils.logging import get_logger, processing


class BaseCommand(ABC):
    """
    Abstract base class for subcommand handlers.

    A command turns one input (a file name, or a literal argument for commands
    that take none) into one or more report records. Errors raised while
    processing an input become error records instead of aborting the run.
    """

    name: ClassVar[str] = ""

    def __init__(self, options: RunOptions, params: Optional[Dict[str, Any]] = None):
        """
        Initialize the command.

        Args:
            options: Global flags of this run
            params: Subcommand-specific arguments
        """
        self.logger = get_logger(self.__class__.__name__)
        self.settings = get_settings()
        self.options = options
        self.params = params or {}

    @property
    def dialect(self) -> Dialect:
        return Dialect(self.options.dialect)

    @property
    def subcommand(self) -> str:
        verb = self.params.get("verb")
        return f"{self.name} {verb}" if verb else self.name

    @abstractmethod
    def process(self, source: str) -> List[RunRecord]:
        """
        Process one input.

        Args:
            source: The input file name or literal argument

        Returns:
            One record per verdict produced from the input
        """

    def run(self, inputs: List[str]) -> List[RunRecord]:
        """Process every input, in parallel when ``--jobs`` asks for it, keeping order."""
        jobs = [(type(self), self.options, self.params, source) for source in inputs]
        batches = run_batch(_process_input, jobs, jobs=self.options.jobs)
        return [record for batch in batches for record in batch]

    def read_text(self, source: str) -> str:
        return Path(source).read_text(encoding="utf-8")

    def timed(self, source: str, action: Callable[[], Dict[str, Any]]) -> RunRecord:
        """Run ``action`` and wrap its verdict, or the error it raises, in a record."""
        started = time.perf_counter()
        with processing(source):
            try:
                verdict = action()
            except Exception as error:
                return self.handle_error(error, source, started)
        return RunRecord(
            input=source,
            subcommand=self.subcommand,
            verdict=verdict,
            elapsed_ms=_elapsed(started),
        )

    def per_formula(
        self, source: str, action: Callable[[str, int], Dict[str, Any]]
    ) -> List[RunRecord]:
        """
        One record per formula of a formula file; ``action`` receives the formula
        text and its line number.
        """
        try:
            text = self.read_text(source)
        except Exception as error:
            return [self.handle_error(error, source, time.perf_counter())]
        records = []
        for item in iter_sources(text, multi=self.options.multi):
            label = f"{source}:{item.line}"
            records.append(
                self.timed(label, lambda item=item: action(item.text, item.line))
            )
        return records

    def handle_error(self, error: Exception, source: str, started: float) -> RunRecord:
        """
        Log an error and turn it into an error record.

        Args:
            error: The exception that occurred
            source: The input being processed
            started: perf_counter value when processing began
        """
        code = exit_code_for(error)
        if isinstance(error, StratkitError):
            payload = error.to_dict()["error"]
            self.logger.info(
                f"{self.subcommand} failed on {source}: {error.message}",
                extra={"extra_data": {"input": source, "code": error.error_code}},
            )
        else:
            payload = {
                "type": type(error).__name__,
                "code": "MALFORMED_INPUT" if code == 3 else "INTERNAL_ERROR",
                "message": str(error),
                "details": {},
            }
            log = self.logger.info if code == 3 else self.logger.error
            log(
                f"{self.subcommand} failed on {source}: {error}",
                exc_info=code != 3,
                extra={"extra_data": {"input": source, "error_type": type(error).__name__}},
            )
        payload["exit_code"] = code
        return RunRecord(
            input=source,
            subcommand=self.subcommand,
            error=payload,
            elapsed_ms=_elapsed(started),
        )


def _elapsed(started: float) -> float:
    return round((time.perf_counter() - started) * 1000.0, 3)


def _process_input(
    job: Tuple[Type[BaseCommand], RunOptions, Dict[str, Any], str],
) -> List[RunRecord]:
    command_class, options, params, source = job
    return command_class(options, params).process(source)
