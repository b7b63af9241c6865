"""
``model <verb>``: finite structures, evaluation, reflection and Cantor checks.
"""

import re
from typing import Any, Dict, List, Optional

from src.commands.base import BaseCommand
from src.logic.parser import parse, parse_many
from src.logic.syntax import Dialect, print_formula
from src.models import RunRecord
from src.sets import hf
from src.sets.cantor import (
    is_cantorian,
    is_strongly_cantorian,
    is_well_founded,
    singleton_image_check,
    weak_extensionality_violations,
)
from src.sets.evaluation import eval_formula
from src.sets.reflection import reflect_search
from src.sets.structure import FiniteStructure, build_vn
from src.utils.exceptions import PowersetNotPresentError, StructureError

MODEL_VERBS = ("build-vn", "eval", "reflect-search", "cantor")

_RANK = re.compile(r"^V(\d+)$")


class ModelCommand(BaseCommand):
    """
    Params:
        verb: One of MODEL_VERBS
        structure: Structure for ``eval``: a JSON file or V<n>
        assign: name=element pairs for ``eval``
        rank: Ambient rank of ``reflect-search``
        required: Codes V_m must contain in ``reflect-search``
        elements: Elements to check in ``cantor`` (default: all)
    """

    name = "model"

    @property
    def max_rank(self) -> int:
        return self.settings.MAX_VN_RANK

    def load_structure(self, ref: str) -> FiniteStructure:
        """A structure from a JSON file, or V_n for ``V<n>``."""
        match = _RANK.match(ref)
        if match:
            return build_vn(int(match.group(1)), max_rank=self.max_rank)
        return FiniteStructure.model_validate_json(self.read_text(ref))

    def process(self, source: str) -> List[RunRecord]:
        verb = self.params["verb"]
        if verb == "build-vn":
            return [self.timed(source, lambda: self.build(source))]
        if verb == "eval":
            return self.per_formula(source, self.evaluate)
        if verb == "reflect-search":
            return [self.timed(source, lambda: self.reflect(source))]
        return [self.timed(source, lambda: self.cantor(source))]

    def build(self, source: str) -> Dict[str, Any]:
        rank = _rank(source)
        structure = build_vn(rank, max_rank=self.max_rank)
        return {
            "verdict": "ok",
            "rank": rank,
            "size": len(structure.universe),
            "structure": structure.to_json_dict(),
        }

    def _valuation(self) -> Dict[str, str]:
        valuation = {}
        for item in self.params.get("assign") or []:
            name, sep, element = item.partition("=")
            if not sep:
                raise StructureError(
                    f"assignment '{item}' is not of the form name=element",
                    details={"assignment": item},
                )
            valuation[name.strip()] = element.strip()
        return valuation

    def evaluate(self, text: str, line: int) -> Dict[str, Any]:
        structure = self.load_structure(self.params.get("structure") or "V3")
        phi = parse(text, Dialect.PLAIN, first_line=line)
        holds = eval_formula(phi, structure, self._valuation())
        return {"verdict": "true" if holds else "false", "formula": print_formula(phi)}

    def reflect(self, source: str) -> Dict[str, Any]:
        phis = parse_many(self.read_text(source), Dialect.PLAIN, multi=self.options.multi)
        rank = int(self.params.get("rank") or 4)
        required = [int(code) for code in self.params.get("required") or []]
        found = reflect_search(phis, rank, required=required, max_rank=self.max_rank)
        return {
            "verdict": "ok",
            "rank": found,
            "ambient_rank": rank,
            "formulas": [print_formula(phi) for phi in phis],
        }

    def cantor(self, source: str) -> Dict[str, Any]:
        structure = self.load_structure(source)
        wanted: Optional[List[str]] = self.params.get("elements")
        rows = []
        for element in wanted or structure.universe:
            row: Dict[str, Any] = {"element": element}
            if _RANK.match(source):
                row["describe"] = hf.describe(int(element))
            try:
                singletons, subsets = singleton_image_check(structure, element)
            except PowersetNotPresentError:
                row["status"] = "powerset-missing"
            else:
                row.update(
                    status="checked",
                    singletons=singletons,
                    subsets=subsets,
                    smaller=singletons < subsets,
                )
            row["cantorian"] = is_cantorian(structure, element)
            row["strongly_cantorian"] = is_strongly_cantorian(structure, element)
            rows.append(row)
        return {
            "verdict": "ok",
            "elements": rows,
            "weak_extensionality": not weak_extensionality_violations(structure),
            "well_founded": is_well_founded(structure),
        }


def _rank(text: str) -> int:
    """``3`` or ``V3``."""
    digits = text[1:] if text.startswith("V") else text
    if not digits.isdigit():
        raise StructureError(f"'{text}' is not a rank", details={"rank": text})
    return int(digits)
