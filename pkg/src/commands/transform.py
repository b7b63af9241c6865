"""
``transform <verb>``: syntactic transformations and schema instances.
"""

from typing import Any, Callable, Dict, List, Optional

from src.commands.base import BaseCommand
from src.logic.parser import parse, parse_term
from src.logic.stratify import check_stratified, type_of_occurrences
from src.logic.syntax import Dialect, Formula, print_formula
from src.logic.transform import (
    SchemaInstanceRequest,
    erase_types,
    instantiate,
    raise_types,
    relativize,
    sstar_axioms,
    supertransitivity_axioms,
    zfcs_translation,
)
from src.models import RunRecord

SCHEMA_VERBS = {
    "reflect": "reflection",
    "comprehend": "comprehension",
    "replace": "replacement",
    "found": "foundation",
}

# Verbs that take no input file
STANDALONE_VERBS = ("sstar", "supertransitivity")

TRANSFORM_VERBS = (
    "relativize",
    *SCHEMA_VERBS,
    "raise",
    "erase",
    "type",
    "translate",
    *STANDALONE_VERBS,
)


class TransformCommand(BaseCommand):
    """
    Params:
        verb: One of TRANSFORM_VERBS
        restrictor: Restricting term of ``relativize`` (default S)
        constant: Constant of ``reflect``, ``translate`` and ``supertransitivity``
        parameters: Designated variables of a schema
        closure: Universal closure of a comprehension instance
        k: Shift of ``raise``
        level_name: Variable replacing the constant in ``translate``
        payload_dialect: Explicit --dialect for schema payloads, if given
    """

    name = "transform"

    @property
    def verb(self) -> str:
        return str(self.params["verb"])

    def process(self, source: str) -> List[RunRecord]:
        if self.verb in STANDALONE_VERBS:
            return self.standalone(source)
        return self.per_formula(source, self.transform_text)

    def standalone(self, source: str) -> List[RunRecord]:
        constant = self.params.get("constant") or "S"
        if self.verb == "sstar":
            axioms = sstar_axioms()
        else:
            axioms = dict(
                zip(("transitive", "supertransitive"), supertransitivity_axioms(constant))
            )
        return [
            self.timed(f"{source}:{label}", lambda ast=ast: _result(None, ast))
            for label, ast in axioms.items()
        ]

    def transform_text(self, text: str, line: int) -> Dict[str, Any]:
        verb = self.verb
        if verb in SCHEMA_VERBS:
            request = SchemaInstanceRequest(
                schema_tag=SCHEMA_VERBS[verb],
                formula=text,
                parameters=list(self.params.get("parameters") or []),
                constant=self.params.get("constant") or "S",
                universal_closure=bool(self.params.get("closure")),
                dialect=self.params.get("payload_dialect"),
            )
            result = instantiate(request, merge_set_vars=self.options.merge_set_vars)
            return {"formula": text.strip(), **_result(None, result)}

        handler = self.handlers()[verb]
        dialect = Dialect.TST if verb in ("raise", "erase") else self.dialect
        ast = parse(text, dialect, first_line=line)
        return _result(ast, handler(ast))

    def handlers(self) -> Dict[str, Callable[[Formula], Formula]]:
        return {
            "relativize": self.relativize,
            "raise": lambda ast: raise_types(ast, int(self.params.get("k", 1))),
            "erase": erase_types,
            "type": self.type_occurrences,
            "translate": lambda ast: zfcs_translation(
                ast,
                self.params.get("level_name") or "V_alpha",
                self.params.get("constant") or "S",
            ),
        }

    def relativize(self, ast: Formula) -> Formula:
        restrictor: Optional[str] = self.params.get("restrictor")
        term = parse_term(restrictor, self.dialect) if restrictor else None
        return relativize(ast, term if term is not None else "S")

    def type_occurrences(self, ast: Formula) -> Formula:
        verdict = check_stratified(ast, Dialect.PLAIN)
        return type_of_occurrences(verdict, ast)


def _result(source: Optional[Formula], result: Formula) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"verdict": "ok"}
    if source is not None:
        payload["formula"] = print_formula(source)
    payload["result"] = print_formula(result)
    return payload
