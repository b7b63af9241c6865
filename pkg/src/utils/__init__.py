"""
Shared utilities: exceptions, logging and batch execution.
"""

from .batch import run_batch
from .exceptions import StratkitError, exit_code_for

__all__ = ["StratkitError", "exit_code_for", "run_batch"]
