"""
Functors between finite categories.
"""

from typing import Dict, List

from pydantic import BaseModel, ConfigDict

from src.categories.category import FinCategory, Violation
from src.utils.exceptions import CategoryError


class Functor(BaseModel):
    """Object and morphism maps from ``source`` to ``target``."""

    model_config = ConfigDict(frozen=True)

    source: FinCategory
    target: FinCategory
    object_map: Dict[str, str]
    morphism_map: Dict[str, str]

    def on_object(self, obj: str) -> str:
        try:
            return self.object_map[obj]
        except KeyError:
            raise CategoryError(
                f"functor does not map object {obj}", details={"object": obj}
            ) from None

    def on_morphism(self, name: str) -> str:
        try:
            return self.morphism_map[name]
        except KeyError:
            raise CategoryError(
                f"functor does not map morphism {name}", details={"morphism": name}
            ) from None

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "object_map": dict(self.object_map),
            "morphism_map": dict(self.morphism_map),
        }


def validate_functor(functor: Functor) -> List[Violation]:
    """
    Check that the maps are total and preserve domains, codomains, identities and
    composition. Every law is checked on every object, morphism and composable pair.
    """
    src, dst = functor.source, functor.target
    violations: List[Violation] = []
    target_objects = set(dst.objects)
    target_morphisms = {m.id for m in dst.morphisms}

    for obj in src.objects:
        image = functor.object_map.get(obj)
        if image not in target_objects:
            violations.append(
                Violation(
                    law="object-map",
                    witnesses=(obj,),
                    message=f"object {obj} has no image in the target",
                )
            )
    for m in src.morphisms:
        image = functor.morphism_map.get(m.id)
        if image not in target_morphisms:
            violations.append(
                Violation(
                    law="morphism-map",
                    witnesses=(m.id,),
                    message=f"morphism {m.id} has no image in the target",
                )
            )
    if violations:
        return violations

    for m in src.morphisms:
        image = dst.morphism(functor.morphism_map[m.id])
        if image.dom != functor.object_map[m.dom]:
            violations.append(
                Violation(
                    law="preserves-dom",
                    witnesses=(m.id,),
                    message=f"image of {m.id} starts at {image.dom}",
                )
            )
        if image.cod != functor.object_map[m.cod]:
            violations.append(
                Violation(
                    law="preserves-cod",
                    witnesses=(m.id,),
                    message=f"image of {m.id} ends at {image.cod}",
                )
            )

    for obj, ident in src.identities.items():
        expected = dst.identities[functor.object_map[obj]]
        if functor.morphism_map[ident] != expected:
            violations.append(
                Violation(
                    law="preserves-identity",
                    witnesses=(ident,),
                    message=f"identity of {obj} goes to {functor.morphism_map[ident]}",
                )
            )

    for g, f in src.composable_pairs():
        gf = src.lookup(g, f)
        if gf is None:
            continue
        fg_image = dst.lookup(functor.morphism_map[g], functor.morphism_map[f])
        if fg_image != functor.morphism_map[gf]:
            violations.append(
                Violation(
                    law="preserves-composition",
                    witnesses=(g, f),
                    message=f"F({g} {f}) differs from F({g}) F({f})",
                )
            )
    return violations


def constant_diagram(index: FinCategory, target: FinCategory, obj: str) -> Functor:
    """The diagram sending every object to ``obj`` and every morphism to its identity."""
    ident = target.identity(obj)
    return Functor(
        source=index,
        target=target,
        object_map={o: obj for o in index.objects},
        morphism_map={m.id: ident for m in index.morphisms},
    )


def diagram_from_family(
    index: FinCategory, target: FinCategory, family: Dict[str, str]
) -> Functor:
    """
    A diagram on a discrete index category given by one target object per index.

    Raises:
        CategoryError: If ``index`` has a morphism other than an identity
    """
    for m in index.morphisms:
        if not index.is_identity(m.id):
            raise CategoryError(
                "object families only define diagrams on discrete categories",
                details={"morphism": m.id},
            )
    return Functor(
        source=index,
        target=target,
        object_map=dict(family),
        morphism_map={index.identity(o): target.identity(family[o]) for o in index.objects},
    )
