"""
``parse``: parse and pretty-print formula files.
"""

from typing import Any, Dict, List

from src.commands.base import BaseCommand
from src.logic.parser import parse
from src.logic.syntax import dialect_of, free_variables_ordered, print_formula
from src.models import RunRecord


class ParseCommand(BaseCommand):
    name = "parse"

    def process(self, source: str) -> List[RunRecord]:
        return self.per_formula(source, self.parse_one)

    def parse_one(self, text: str, line: int) -> Dict[str, Any]:
        ast = parse(text, self.dialect, first_line=line)
        return {
            "verdict": "ok",
            "formula": print_formula(ast),
            "dialect": dialect_of(ast).value,
            "free": free_variables_ordered(ast),
        }
