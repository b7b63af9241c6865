"""
Set-valued functors, natural transformations and the finite Yoneda bijection.
"""

import itertools
import math
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from src.categories.category import FinCategory, MorphismSpec, Violation
from src.config import get_settings
from src.utils.exceptions import CategoryError, FeasibilityError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Components = Dict[str, Dict[str, str]]


class SetFunctor(BaseModel):
    """A functor from a finite category into finite sets."""

    model_config = ConfigDict(frozen=True)

    category: FinCategory
    sets: Dict[str, Tuple[str, ...]]
    maps: Dict[str, Dict[str, str]]

    def apply(self, morphism: str, element: str) -> str:
        try:
            return self.maps[morphism][element]
        except KeyError:
            raise CategoryError(
                f"F({morphism}) is undefined at {element}",
                details={"morphism": morphism, "element": element},
            ) from None

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "sets": {obj: list(elements) for obj, elements in self.sets.items()},
            "maps": {name: dict(graph) for name, graph in self.maps.items()},
        }


def validate_set_functor(functor: SetFunctor) -> List[Violation]:
    """Totality, identities and composition of a set-valued functor."""
    c = functor.category
    violations: List[Violation] = []
    for obj in c.objects:
        if obj not in functor.sets:
            violations.append(
                Violation(law="object-map", witnesses=(obj,), message=f"F({obj}) is missing")
            )
    if violations:
        return violations

    for m in c.morphisms:
        graph = functor.maps.get(m.id, {})
        target = set(functor.sets[m.cod])
        if set(graph) != set(functor.sets[m.dom]) or not set(graph.values()) <= target:
            violations.append(
                Violation(
                    law="morphism-map",
                    witnesses=(m.id,),
                    message=f"F({m.id}) is not a function F({m.dom}) -> F({m.cod})",
                )
            )
    if violations:
        return violations

    for obj, ident in c.identities.items():
        if any(functor.maps[ident][x] != x for x in functor.sets[obj]):
            violations.append(
                Violation(
                    law="preserves-identity",
                    witnesses=(ident,),
                    message=f"F({ident}) is not the identity",
                )
            )
    for g, f in c.composable_pairs():
        gf = c.lookup(g, f)
        if gf is None:
            continue
        for x in functor.sets[c.dom(f)]:
            if functor.maps[g][functor.maps[f][x]] != functor.maps[gf][x]:
                violations.append(
                    Violation(
                        law="preserves-composition",
                        witnesses=(g, f),
                        message=f"F({g}) F({f}) and F({gf}) differ at {x}",
                    )
                )
                break
    return violations


def hom_functor(category: FinCategory, obj: str) -> SetFunctor:
    """C(A, -): X goes to the hom-set C(A, X) and g acts by post-composition."""
    category.identity(obj)
    sets = {x: category.hom(obj, x) for x in category.objects}
    maps = {
        m.id: {f: category.composite(m.id, f) for f in sets[m.dom]}
        for m in category.morphisms
    }
    return SetFunctor(category=category, sets=sets, maps=maps)


def naturality_violations(
    source: SetFunctor, target: SetFunctor, components: Components
) -> List[Violation]:
    """Every component family entry or naturality square that fails."""
    c = source.category
    violations: List[Violation] = []
    for obj in c.objects:
        component = components.get(obj, {})
        if set(component) != set(source.sets[obj]) or not set(component.values()) <= set(
            target.sets[obj]
        ):
            violations.append(
                Violation(
                    law="component",
                    witnesses=(obj,),
                    message=f"component at {obj} is not a function",
                )
            )
    if violations:
        return violations
    for m in c.morphisms:
        for x in source.sets[m.dom]:
            around = target.apply(m.id, components[m.dom][x])
            down = components[m.cod][source.apply(m.id, x)]
            if around != down:
                violations.append(
                    Violation(
                        law="naturality",
                        witnesses=(m.id, x),
                        message=f"square for {m.id} fails at {x}",
                    )
                )
                break
    return violations


def _require_parallel(source: SetFunctor, target: SetFunctor) -> None:
    if source.category != target.category:
        raise CategoryError("natural transformations need functors on the same category")


def nat_transformations(
    source: SetFunctor, target: SetFunctor, *, max_candidates: Optional[int] = None
) -> List[Components]:
    """
    Every natural transformation from ``source`` to ``target``.

    Raises:
        CategoryError: If the functors are not parallel
        FeasibilityError: If more component families than ``max_candidates`` exist
    """
    _require_parallel(source, target)
    c = source.category
    cap = get_settings().MAX_CONE_CANDIDATES if max_candidates is None else max_candidates
    requested = math.prod(
        len(target.sets[x]) ** len(source.sets[x]) for x in c.objects
    )
    if requested > cap:
        raise FeasibilityError(
            f"{requested} component families exceed the search cap",
            limit=cap,
            requested=requested,
        )

    order = list(c.objects)
    position = {obj: i for i, obj in enumerate(order)}
    checks: List[List[str]] = [[] for _ in order]
    for m in c.morphisms:
        checks[max(position[m.dom], position[m.cod])].append(m.id)

    found: List[Components] = []
    components: Components = {}

    def square_holds(name: str) -> bool:
        m = c.morphism(name)
        return all(
            target.apply(name, components[m.dom][x])
            == components[m.cod][source.apply(name, x)]
            for x in source.sets[m.dom]
        )

    def extend(k: int) -> None:
        if k == len(order):
            found.append({obj: dict(comp) for obj, comp in components.items()})
            return
        obj = order[k]
        domain = source.sets[obj]
        for values in itertools.product(target.sets[obj], repeat=len(domain)):
            components[obj] = dict(zip(domain, values))
            if all(square_holds(name) for name in checks[k]):
                extend(k + 1)
        components.pop(obj, None)

    extend(0)
    logger.debug(
        "Enumerated natural transformations",
        extra={"extra_data": {"candidates": requested, "natural": len(found)}},
    )
    return found


def yoneda_image(functor: SetFunctor, obj: str, element: str) -> Components:
    """The family f |-> F(f)(element) on C(A, -)."""
    c = functor.category
    return {x: {f: functor.apply(f, element) for f in c.hom(obj, x)} for x in c.objects}


def yoneda_inverse(category: FinCategory, obj: str, components: Components) -> str:
    """Evaluate the component at A on the identity of A."""
    return components[obj][category.identity(obj)]


def _freeze(components: Components) -> Tuple[Tuple[str, Tuple[Tuple[str, str], ...]], ...]:
    return tuple(sorted((obj, tuple(sorted(comp.items()))) for obj, comp in components.items()))


class YonedaVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    obj: str
    elements: int
    transformations: int
    failures: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        return {
            "verdict": "pass" if self.passed else "fail",
            "object": self.obj,
            "elements": self.elements,
            "transformations": self.transformations,
            "failures": list(self.failures),
        }


def yoneda_check(
    category: FinCategory,
    functor: SetFunctor,
    obj: str,
    *,
    max_candidates: Optional[int] = None,
) -> YonedaVerdict:
    """
    Check that x |-> (f |-> F(f)(x)) is a bijection F(A) -> Nat(C(A, -), F) whose
    inverse is evaluation at the identity of A.
    """
    if functor.category != category:
        raise CategoryError("the functor is defined on a different category")
    representable = hom_functor(category, obj)
    failures: List[str] = []
    images: Dict[str, Components] = {}
    for x in functor.sets[obj]:
        image = yoneda_image(functor, obj, x)
        images[x] = image
        if naturality_violations(representable, functor, image):
            failures.append(f"image of {x} is not natural")
        if yoneda_inverse(category, obj, image) != x:
            failures.append(f"evaluation at the identity does not recover {x}")

    natural = nat_transformations(representable, functor, max_candidates=max_candidates)
    frozen_images = {_freeze(image): x for x, image in images.items()}
    if len(frozen_images) != len(images):
        failures.append("two elements have the same image")
    for alpha in natural:
        if _freeze(alpha) not in frozen_images:
            failures.append(
                f"transformation sending the identity to "
                f"{yoneda_inverse(category, obj, alpha)} is not an image"
            )
    if len(natural) != len(functor.sets[obj]):
        failures.append(
            f"|F({obj})| = {len(functor.sets[obj])} but there are {len(natural)} transformations"
        )

    verdict = YonedaVerdict(
        passed=not failures,
        obj=obj,
        elements=len(functor.sets[obj]),
        transformations=len(natural),
        failures=tuple(failures),
    )
    logger.debug("Yoneda check", extra={"extra_data": verdict.to_dict()})
    return verdict


def _functors_with_sets(
    c: FinCategory,
    sets: Dict[str, Tuple[str, ...]],
    non_identity: List[MorphismSpec],
    checks: List[List[Tuple[str, str, str]]],
) -> Iterator[SetFunctor]:
    maps: Dict[str, Dict[str, str]] = {
        ident: {x: x for x in sets[obj]} for obj, ident in c.identities.items()
    }

    def composes(g: str, f: str, gf: str) -> bool:
        return all(maps[g][maps[f][x]] == maps[gf][x] for x in sets[c.dom(f)])

    def extend(k: int) -> Iterator[SetFunctor]:
        if k == len(non_identity):
            yield SetFunctor(category=c, sets=sets, maps={n: dict(g) for n, g in maps.items()})
            return
        m = non_identity[k]
        domain = sets[m.dom]
        for values in itertools.product(sets[m.cod], repeat=len(domain)):
            maps[m.id] = dict(zip(domain, values))
            if all(composes(*triple) for triple in checks[k]):
                yield from extend(k + 1)
        maps.pop(m.id, None)

    return extend(0)


def enumerate_set_functors(category: FinCategory, max_size: int) -> Iterator[SetFunctor]:
    """
    Every set-valued functor on ``category`` whose sets are {"0", ..., "k-1"} with
    k <= ``max_size``.
    """
    c = category
    non_identity = [m for m in c.morphisms if not c.is_identity(m.id)]
    position = {m.id: i for i, m in enumerate(non_identity)}

    def ready(g: str, f: str, gf: str, k: int) -> bool:
        return all(c.is_identity(n) or position[n] <= k for n in (g, f, gf))

    checks: List[List[Tuple[str, str, str]]] = [[] for _ in non_identity]
    for g, f in c.composable_pairs():
        gf = c.lookup(g, f)
        if gf is None:
            continue
        for k in range(len(non_identity)):
            if ready(g, f, gf, k):
                checks[k].append((g, f, gf))
                break

    for sizes in itertools.product(range(max_size + 1), repeat=len(c.objects)):
        sets = {obj: tuple(str(i) for i in range(n)) for obj, n in zip(c.objects, sizes)}
        yield from _functors_with_sets(c, sets, non_identity, checks)
