"""
Cones and limits by exhaustive search.

``cones_to`` enumerates every apex and every tuple of legs and keeps the ones whose
triangles commute; ``limits_to`` keeps the cones through which every cone factors
by exactly one mediating morphism.
"""

import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from src.categories.functor import Functor
from src.config import get_settings
from src.utils.exceptions import FeasibilityError
from src.utils.logging import get_logger

logger = get_logger(__name__)


class Cone(BaseModel):
    """An apex with one leg per index object."""

    model_config = ConfigDict(frozen=True)

    apex: str
    legs: Dict[str, str]

    def to_dict(self) -> Dict[str, object]:
        return {"apex": self.apex, "legs": dict(self.legs)}


def _cap(max_candidates: Optional[int]) -> int:
    if max_candidates is None:
        return get_settings().MAX_CONE_CANDIDATES
    return max_candidates


def count_leg_tuples(functor: Functor) -> int:
    """Number of leg tuples ``cones_to`` would consider."""
    src, dst = functor.source, functor.target
    images = [functor.on_object(x) for x in src.objects]
    return sum(
        math.prod(len(dst.hom(apex, image)) for image in images) for apex in dst.objects
    )


def is_cone(functor: Functor, cone: Cone) -> bool:
    """Every triangle F(f) n_X = n_Y commutes."""
    dst = functor.target
    for m in functor.source.morphisms:
        leg = cone.legs.get(m.dom)
        if leg is None or cone.legs.get(m.cod) is None:
            return False
        if dst.lookup(functor.on_morphism(m.id), leg) != cone.legs[m.cod]:
            return False
    return True


def _leg_tuples(
    functor: Functor,
    order: List[str],
    options: List[Tuple[str, ...]],
    checks: List[List[Tuple[str, str, str]]],
) -> Iterator[Dict[str, str]]:
    dst = functor.target
    legs: Dict[str, str] = {}

    def extend(k: int) -> Iterator[Dict[str, str]]:
        if k == len(order):
            yield dict(legs)
            return
        for leg in options[k]:
            legs[order[k]] = leg
            if all(dst.lookup(image, legs[dom]) == legs[cod] for image, dom, cod in checks[k]):
                yield from extend(k + 1)
        legs.pop(order[k], None)

    return extend(0)


def cones_to(functor: Functor, *, max_candidates: Optional[int] = None) -> List[Cone]:
    """
    All cones to ``functor``, apexes in target order and legs in hom-set order.

    Raises:
        FeasibilityError: If more leg tuples than ``max_candidates`` would be tried
    """
    cap = _cap(max_candidates)
    requested = count_leg_tuples(functor)
    if requested > cap:
        raise FeasibilityError(
            f"{requested} candidate leg tuples exceed the cone search cap",
            limit=cap,
            requested=requested,
        )

    src, dst = functor.source, functor.target
    order = list(src.objects)
    position = {obj: i for i, obj in enumerate(order)}
    checks: List[List[Tuple[str, str, str]]] = [[] for _ in order]
    for m in src.morphisms:
        last = max(position[m.dom], position[m.cod])
        checks[last].append((functor.on_morphism(m.id), m.dom, m.cod))

    cones: List[Cone] = []
    for apex in dst.objects:
        options = [dst.hom(apex, functor.on_object(x)) for x in order]
        for legs in _leg_tuples(functor, order, options, checks):
            cones.append(Cone(apex=apex, legs=legs))

    logger.debug(
        "Enumerated cones",
        extra={"extra_data": {"candidates": requested, "cones": len(cones)}},
    )
    return cones


def mediating_morphisms(functor: Functor, cone: Cone, limit: Cone) -> List[str]:
    """Every v : cone.apex -> limit.apex with limit.legs[X] v = cone.legs[X] for all X."""
    dst = functor.target
    return [
        v
        for v in dst.hom(cone.apex, limit.apex)
        if all(dst.lookup(limit.legs[x], v) == cone.legs[x] for x in functor.source.objects)
    ]


def is_limit(functor: Functor, candidate: Cone, cones: Sequence[Cone]) -> bool:
    """Every cone in ``cones`` factors through ``candidate`` in exactly one way."""
    return all(len(mediating_morphisms(functor, k, candidate)) == 1 for k in cones)


def limits_to(
    functor: Functor,
    *,
    cones: Optional[Sequence[Cone]] = None,
    max_candidates: Optional[int] = None,
) -> List[Cone]:
    """
    The universal cones to ``functor``.

    Raises:
        FeasibilityError: If the cone enumeration exceeds its cap
    """
    if cones is None:
        cones = cones_to(functor, max_candidates=max_candidates)
    limits = [candidate for candidate in cones if is_limit(functor, candidate, cones)]
    logger.debug(
        "Found limits",
        extra={"extra_data": {"cones": len(cones), "limits": len(limits)}},
    )
    return limits


def limits_isomorphic(functor: Functor, first: Cone, second: Cone) -> bool:
    """The unique mediating morphisms between two limits are mutually inverse."""
    dst = functor.target
    forward = mediating_morphisms(functor, first, second)
    backward = mediating_morphisms(functor, second, first)
    if len(forward) != 1 or len(backward) != 1:
        return False
    u, v = forward[0], backward[0]
    return dst.lookup(v, u) == dst.identity(first.apex) and dst.lookup(
        u, v
    ) == dst.identity(second.apex)
