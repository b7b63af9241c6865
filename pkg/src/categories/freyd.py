"""
Freyd's theorem at finite scale.

A category with all products indexed by its own set of arrows is a preorder. For a
finite non-preorder the check exhibits a product over Arr(C) that does not exist,
which is the contrapositive in concrete form.
"""

import itertools
from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from src.categories.category import FinCategory, arr_category, is_preorder
from src.categories.functor import Functor, constant_diagram, diagram_from_family
from src.categories.limits import limits_to
from src.config import get_settings
from src.utils.exceptions import FeasibilityError
from src.utils.logging import get_logger

logger = get_logger(__name__)

FreydOutcome = Literal["preorder", "not-preorder-and-missing-product", "theorem-violation"]


class FreydVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    outcome: FreydOutcome
    parallel: Optional[Tuple[str, str]] = None
    diagram: Optional[Dict[str, str]] = None

    def to_dict(self) -> Dict[str, object]:
        payload: Dict[str, object] = {"verdict": self.outcome}
        if self.parallel is not None:
            payload["parallel"] = list(self.parallel)
        if self.diagram is not None:
            payload["diagram"] = dict(self.diagram)
        return payload


def _parallel_pair(category: FinCategory) -> Tuple[str, str]:
    for a in category.objects:
        for b in category.objects:
            hom = category.hom(a, b)
            if len(hom) > 1:
                return hom[0], hom[1]
    raise AssertionError("category is a preorder")


def _has_limit(diagram: Functor, max_candidates: int) -> bool:
    return bool(limits_to(diagram, max_candidates=max_candidates))


def freyd_check(
    category: FinCategory,
    *,
    max_morphisms: Optional[int] = None,
    max_candidates: Optional[int] = None,
) -> FreydVerdict:
    """
    Classify ``category`` against Freyd's theorem.

    A non-preorder is first tested on the constant diagram at the codomain of a
    parallel pair; if that product unexpectedly exists, every Arr(C)-indexed family
    is searched for one without a limit before reporting a theorem violation.

    Raises:
        FeasibilityError: If the category has more than ``max_morphisms`` morphisms
            or a cone search exceeds its cap
    """
    settings = get_settings()
    limit = settings.FREYD_MAX_MORPHISMS if max_morphisms is None else max_morphisms
    cap = settings.MAX_CONE_CANDIDATES if max_candidates is None else max_candidates
    if len(category.morphisms) > limit:
        raise FeasibilityError(
            f"Freyd check on {len(category.morphisms)} morphisms exceeds the cap",
            limit=limit,
            requested=len(category.morphisms),
        )

    if is_preorder(category):
        return FreydVerdict(outcome="preorder")

    f, g = _parallel_pair(category)
    index = arr_category(category)
    target = category.cod(f)
    diagram = constant_diagram(index, category, target)
    if not _has_limit(diagram, cap):
        logger.debug(
            "Constant diagram over Arr(C) has no limit",
            extra={"extra_data": {"parallel": [f, g], "object": target}},
        )
        return FreydVerdict(
            outcome="not-preorder-and-missing-product",
            parallel=(f, g),
            diagram=dict(diagram.object_map),
        )

    for images in itertools.product(category.objects, repeat=len(index.objects)):
        family = dict(zip(index.objects, images))
        candidate = diagram_from_family(index, category, family)
        if not _has_limit(candidate, cap):
            return FreydVerdict(
                outcome="not-preorder-and-missing-product",
                parallel=(f, g),
                diagram=family,
            )

    logger.error(
        "Every Arr(C)-indexed product exists in a non-preorder",
        extra={"extra_data": {"objects": list(category.objects)}},
    )
    return FreydVerdict(outcome="theorem-violation", parallel=(f, g))
