"""
``cat <verb>``: finite categories, limits, Freyd's theorem, Rel/Set and Yoneda.
"""

from collections import Counter
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from src.categories.category import FinCategory, require_valid, validate_category
from src.categories.enumeration import iter_categories
from src.categories.freyd import freyd_check
from src.categories.functor import validate_functor
from src.categories.limits import cones_to, limits_isomorphic, limits_to
from src.categories.relations import (
    RelCone,
    RelUniverse,
    candidate_cocones,
    is_colimit_among,
    is_limit_among,
    candidate_cones,
    rel_coproduct,
    rel_product,
    set_coproduct,
)
from src.categories.yoneda import validate_set_functor, yoneda_check
from src.commands.base import BaseCommand
from src.models import FunctorSpec, RelDiagramSpec, RunRecord, SetFunctorSpec
from src.utils.exceptions import CategoryError

CAT_VERBS = (
    "validate",
    "limits",
    "freyd",
    "rel-product",
    "rel-coproduct",
    "set-coproduct",
    "yoneda",
    "enumerate",
)

# Cone apexes larger than this are skipped unless max_apex says otherwise
DEFAULT_MAX_APEX = 2


class CatCommand(BaseCommand):
    """
    Params:
        verb: One of CAT_VERBS
        max_apex: Largest cone apex for the Rel/Set universality checks
        max_objects: Object cap of ``enumerate``
    """

    name = "cat"

    def process(self, source: str) -> List[RunRecord]:
        handler: Callable[[str], Dict[str, Any]] = {
            "validate": self.validate,
            "limits": self.limits,
            "freyd": self.freyd,
            "rel-product": self.rel_product,
            "rel-coproduct": self.rel_coproduct,
            "set-coproduct": self.set_coproduct,
            "yoneda": self.yoneda,
            "enumerate": self.enumerate,
        }[self.params["verb"]]
        return [self.timed(source, lambda: handler(source))]

    def load_category(self, source: str) -> FinCategory:
        return FinCategory.model_validate_json(self.read_text(source))

    @property
    def max_apex(self) -> Optional[int]:
        value = self.params.get("max_apex", DEFAULT_MAX_APEX)
        return None if value is None or value < 0 else int(value)

    def validate(self, source: str) -> Dict[str, Any]:
        category = self.load_category(source)
        violations = validate_category(category)
        return {
            "verdict": "invalid" if violations else "valid",
            "objects": len(category.objects),
            "morphisms": len(category.morphisms),
            "violations": [v.to_dict() for v in violations],
        }

    def limits(self, source: str) -> Dict[str, Any]:
        spec = FunctorSpec.model_validate_json(self.read_text(source))
        functor = spec.resolve(Path(source).parent)
        require_valid(functor.source)
        require_valid(functor.target)
        violations = validate_functor(functor)
        if violations:
            raise CategoryError(
                f"not a functor: {violations[0].message}",
                details={"violations": [v.to_dict() for v in violations]},
            )
        cones = cones_to(functor, max_candidates=self.settings.MAX_CONE_CANDIDATES)
        limits = limits_to(functor, cones=cones)
        return {
            "verdict": "has-limit" if limits else "no-limit",
            "cones": len(cones),
            "limits": [cone.to_dict() for cone in limits],
            "isomorphic": all(
                limits_isomorphic(functor, first, second)
                for first in limits
                for second in limits
            ),
        }

    def freyd(self, source: str) -> Dict[str, Any]:
        category = require_valid(self.load_category(source))
        verdict = freyd_check(category, max_morphisms=self.options.max_morphisms)
        return verdict.to_dict()

    def _diagram(self, source: str) -> RelDiagramSpec:
        return RelDiagramSpec.model_validate_json(self.read_text(source))

    def rel_product(self, source: str) -> Dict[str, Any]:
        spec = self._diagram(source)
        diagram = spec.frozen()
        product = rel_product(diagram, max_carrier=self.settings.MAX_CARRIER)
        cones = list(
            candidate_cones(RelUniverse.of(spec.carrier), diagram, max_apex=self.max_apex)
        )
        return _universal(product, is_limit_among(product, cones), len(cones))

    def rel_coproduct(self, source: str) -> Dict[str, Any]:
        return self._coproduct(source, functional=False)

    def set_coproduct(self, source: str) -> Dict[str, Any]:
        return self._coproduct(source, functional=True)

    def _coproduct(self, source: str, *, functional: bool) -> Dict[str, Any]:
        spec = self._diagram(source)
        diagram = spec.frozen()
        build = set_coproduct if functional else rel_coproduct
        coproduct = build(diagram, max_carrier=self.settings.MAX_CARRIER)
        cones = list(
            candidate_cocones(
                RelUniverse.of(spec.carrier),
                diagram,
                functional=functional,
                max_apex=self.max_apex,
            )
        )
        universal = is_colimit_among(coproduct, cones, functional=functional)
        return _universal(coproduct, universal, len(cones))

    def yoneda(self, source: str) -> Dict[str, Any]:
        spec = SetFunctorSpec.model_validate_json(self.read_text(source))
        functor = spec.resolve(Path(source).parent)
        category = require_valid(functor.category)
        violations = validate_set_functor(functor)
        if violations:
            raise CategoryError(
                f"not a functor to Set: {violations[0].message}",
                details={"violations": [v.to_dict() for v in violations]},
            )
        obj = spec.at or category.objects[0]
        if obj not in category.objects:
            raise CategoryError(f"{obj} is not an object", details={"object": obj})
        verdict = yoneda_check(
            category, functor, obj, max_candidates=self.settings.MAX_CONE_CANDIDATES
        )
        return verdict.to_dict()

    def enumerate(self, source: str) -> Dict[str, Any]:
        """Freyd sweep over every category with at most ``source`` morphisms."""
        if not source.isdigit():
            raise CategoryError(
                f"'{source}' is not a morphism count", details={"input": source}
            )
        max_morphisms = int(source)
        outcomes: Counter[str] = Counter()
        violations = []
        for category in iter_categories(max_morphisms, self.params.get("max_objects")):
            verdict = freyd_check(category, max_morphisms=max_morphisms)
            outcomes[verdict.outcome] += 1
            if verdict.outcome == "theorem-violation":
                violations.append(category.to_json_dict())
        self.logger.info(
            "Freyd sweep finished",
            extra={"extra_data": {"max_morphisms": max_morphisms, **outcomes}},
        )
        return {
            "verdict": "theorem-violation" if violations else "ok",
            "categories": sum(outcomes.values()),
            "outcomes": dict(sorted(outcomes.items())),
            "violations": violations,
        }


def _universal(construction: RelCone, universal: bool, cones: int) -> Dict[str, Any]:
    kind = "limit" if construction.kind == "cone" else "colimit"
    return {
        "verdict": kind if universal else f"not-{kind}",
        "construction": construction.to_dict(),
        "cones": cones,
    }
