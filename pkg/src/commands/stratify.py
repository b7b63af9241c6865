"""
``stratify``: decide stratifiability of formula files or of a random corpus.
"""

import random
from typing import Any, Dict, List

from src.commands.base import BaseCommand
from src.logic.corpus import VARIABLE_NAMES, random_formula
from src.logic.parser import parse
from src.logic.stratify import brute_force_oracle, check_stratified
from src.logic.syntax import Formula, print_formula
from src.models import RunRecord

RANDOM_SOURCE = "random"


class StratifyCommand(BaseCommand):
    """
    Params:
        oracle: Cross-check every verdict against the brute-force oracle
        random: Number of random formulas to check instead of reading files
    """

    name = "stratify"

    @property
    def merge_set_vars(self) -> bool:
        return self.options.merge_set_vars or self.settings.MERGE_SET_VARS

    def process(self, source: str) -> List[RunRecord]:
        if source == RANDOM_SOURCE and self.params.get("random"):
            return self.random_corpus()
        return self.per_formula(source, self.check_text)

    def check_text(self, text: str, line: int) -> Dict[str, Any]:
        return self.check(parse(text, self.dialect, first_line=line))

    def check(self, ast: Formula) -> Dict[str, Any]:
        verdict = check_stratified(ast, self.dialect, merge_set_vars=self.merge_set_vars)
        payload: Dict[str, Any] = {"formula": print_formula(ast), **verdict.to_dict()}
        if self.params.get("oracle"):
            expected = brute_force_oracle(
                ast,
                self.dialect,
                merge_set_vars=self.merge_set_vars,
                max_assignments=self.settings.ORACLE_MAX_ASSIGNMENTS,
            )
            agree = expected.stratified == verdict.stratified
            payload["oracle"] = "agree" if agree else "disagree"
            if not agree:
                self.logger.error(
                    "Solver and oracle disagree",
                    extra={"extra_data": {"formula": payload["formula"]}},
                )
        return payload

    def random_corpus(self) -> List[RunRecord]:
        count = int(self.params["random"])
        rng = random.Random(self.options.seed)
        self.logger.info(
            "Checking random corpus",
            extra={"extra_data": {"count": count, "seed": self.options.seed}},
        )
        records = []
        for index in range(count):
            ast = random_formula(rng, variables=VARIABLE_NAMES)
            records.append(
                self.timed(f"{RANDOM_SOURCE}:{index}", lambda ast=ast: self.check(ast))
            )
        return records
