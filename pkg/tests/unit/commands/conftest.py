"""
Fixtures for the subcommand handler tests.
"""

from typing import Any, Callable, Type

import pytest

from src.categories.builders import parallel_pair, total_order
from src.commands.base import BaseCommand
from src.models import RunOptions


@pytest.fixture
def make_command() -> Callable[..., BaseCommand]:
    """Build a command from its class, params and optional RunOptions fields."""

    def make(command_class: Type[BaseCommand], options: Any = None, **params: Any):
        return command_class(RunOptions(**(options or {})), params)

    return make


@pytest.fixture
def pair_file(write_json):
    return write_json("pair.json", parallel_pair().to_json_dict())


@pytest.fixture
def chain_file(write_json):
    return write_json("chain.json", total_order(["0", "1", "2"]).to_json_dict())
