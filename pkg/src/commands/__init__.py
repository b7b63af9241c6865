"""
Subcommand handlers of the stratkit CLI.
"""

from typing import Dict, Type

from .base import BaseCommand
from .cat import CAT_VERBS, CatCommand
from .model import MODEL_VERBS, ModelCommand
from .parse import ParseCommand
from .stratify import RANDOM_SOURCE, StratifyCommand
from .transform import STANDALONE_VERBS, TRANSFORM_VERBS, TransformCommand

COMMANDS: Dict[str, Type[BaseCommand]] = {
    command.name: command
    for command in (ParseCommand, StratifyCommand, TransformCommand, ModelCommand, CatCommand)
}

__all__ = [
    "BaseCommand",
    "CAT_VERBS",
    "COMMANDS",
    "CatCommand",
    "MODEL_VERBS",
    "ModelCommand",
    "ParseCommand",
    "RANDOM_SOURCE",
    "STANDALONE_VERBS",
    "StratifyCommand",
    "TRANSFORM_VERBS",
    "TransformCommand",
]
