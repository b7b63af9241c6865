"""
Finite categories given by explicit composition tables.

A category is plain data: object ids, morphisms with their domain and codomain,
the identity of every object and a composition table of triples (g, f, g∘f).
Construction only checks that every id refers to something that exists; the
category laws are checked separately by ``validate_category`` so that broken
tables can still be loaded and diagnosed.
"""

from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from src.utils.exceptions import CategoryError
from src.utils.logging import get_logger

logger = get_logger(__name__)


class MorphismSpec(BaseModel):
    """A morphism id with its domain and codomain."""

    model_config = ConfigDict(frozen=True)

    id: str
    dom: str
    cod: str


class Violation(BaseModel):
    """A failed category or functor law together with the ids that witness it."""

    model_config = ConfigDict(frozen=True)

    law: str
    witnesses: Tuple[str, ...]
    message: str

    def to_dict(self) -> Dict[str, object]:
        return {"law": self.law, "witnesses": list(self.witnesses), "message": self.message}


class FinCategory(BaseModel):
    """A finite category with an explicit composition table."""

    model_config = ConfigDict(frozen=True)

    objects: Tuple[str, ...]
    morphisms: Tuple[MorphismSpec, ...]
    identities: Dict[str, str]
    compose: Tuple[Tuple[str, str, str], ...] = Field(
        default=(), description="Triples (g, f, g∘f)"
    )

    _by_id: Dict[str, MorphismSpec] = PrivateAttr(default_factory=dict)
    _table: Dict[Tuple[str, str], str] = PrivateAttr(default_factory=dict)
    _hom: Dict[Tuple[str, str], Tuple[str, ...]] = PrivateAttr(default_factory=dict)
    _outgoing: Dict[str, Tuple[str, ...]] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def validate_references(self) -> "FinCategory":
        objects = set(self.objects)
        if len(objects) != len(self.objects):
            raise ValueError("objects lists an id twice")
        ids = [m.id for m in self.morphisms]
        if len(set(ids)) != len(ids):
            raise ValueError("morphisms lists an id twice")
        for m in self.morphisms:
            if m.dom not in objects or m.cod not in objects:
                raise ValueError(f"morphism {m.id} has an unknown domain or codomain")
        if set(self.identities) != objects:
            raise ValueError("every object needs exactly one identity")
        known = set(ids)
        for obj, ident in self.identities.items():
            if ident not in known:
                raise ValueError(f"identity {ident} of {obj} is not a morphism")
        table: Dict[Tuple[str, str], str] = {}
        for g, f, h in self.compose:
            for name in (g, f, h):
                if name not in known:
                    raise ValueError(f"composition table mentions unknown morphism {name}")
            if table.setdefault((g, f), h) != h:
                raise ValueError(f"composite of {g} after {f} is given twice")
        return self

    def model_post_init(self, __context: object) -> None:
        self._by_id = {m.id: m for m in self.morphisms}
        self._table = {(g, f): h for g, f, h in self.compose}
        hom: Dict[Tuple[str, str], List[str]] = {}
        outgoing: Dict[str, List[str]] = {obj: [] for obj in self.objects}
        for m in self.morphisms:
            hom.setdefault((m.dom, m.cod), []).append(m.id)
            outgoing[m.dom].append(m.id)
        self._hom = {key: tuple(value) for key, value in hom.items()}
        self._outgoing = {key: tuple(value) for key, value in outgoing.items()}

    def morphism(self, name: str) -> MorphismSpec:
        try:
            return self._by_id[name]
        except KeyError:
            raise CategoryError(
                f"unknown morphism {name}", details={"morphism": name}
            ) from None

    def dom(self, name: str) -> str:
        return self.morphism(name).dom

    def cod(self, name: str) -> str:
        return self.morphism(name).cod

    def identity(self, obj: str) -> str:
        try:
            return self.identities[obj]
        except KeyError:
            raise CategoryError(f"unknown object {obj}", details={"object": obj}) from None

    def is_identity(self, name: str) -> bool:
        m = self.morphism(name)
        return self.identities.get(m.dom) == name

    def lookup(self, g: str, f: str) -> Optional[str]:
        """The table entry for g∘f, or None."""
        return self._table.get((g, f))

    def composite(self, g: str, f: str) -> str:
        """g∘f, first f then g."""
        result = self._table.get((g, f))
        if result is None:
            raise CategoryError(
                f"composite of {g} after {f} is not defined",
                details={"g": g, "f": f},
            )
        return result

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        return self._hom.get((a, b), ())

    def outgoing(self, obj: str) -> Tuple[str, ...]:
        return self._outgoing.get(obj, ())

    def composable_pairs(self) -> Iterator[Tuple[str, str]]:
        """All (g, f) with cod(f) = dom(g)."""
        for f in self.morphisms:
            for g in self.outgoing(f.cod):
                yield g, f.id

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "objects": list(self.objects),
            "morphisms": [m.model_dump() for m in self.morphisms],
            "identities": dict(self.identities),
            "compose": [list(entry) for entry in self.compose],
        }


def discrete(objects: Iterable[str]) -> FinCategory:
    """The category with the given objects and only identity morphisms."""
    objects = tuple(objects)
    identities = {obj: f"id_{obj}" for obj in objects}
    return FinCategory(
        objects=objects,
        morphisms=tuple(MorphismSpec(id=identities[o], dom=o, cod=o) for o in objects),
        identities=identities,
        compose=tuple((i, i, i) for i in identities.values()),
    )


def validate_category(category: FinCategory) -> List[Violation]:
    """
    Every failed category law, each with the morphisms that witness it.

    An empty list means the identity laws, associativity, totality of the table on
    composable pairs and the domain/codomain of every composite all hold.
    """
    violations: List[Violation] = []
    c = category

    for obj, ident in c.identities.items():
        m = c.morphism(ident)
        if m.dom != obj or m.cod != obj:
            violations.append(
                Violation(
                    law="identity-type",
                    witnesses=(ident,),
                    message=f"identity {ident} of {obj} is not {obj} -> {obj}",
                )
            )

    for g, f, h in c.compose:
        mg, mf, mh = c.morphism(g), c.morphism(f), c.morphism(h)
        if mf.cod != mg.dom:
            violations.append(
                Violation(
                    law="spurious-composite",
                    witnesses=(g, f),
                    message=f"{g} after {f} is tabulated but they are not composable",
                )
            )
        elif mh.dom != mf.dom or mh.cod != mg.cod:
            violations.append(
                Violation(
                    law="dom-cod",
                    witnesses=(g, f, h),
                    message=f"{g} after {f} should run {mf.dom} -> {mg.cod}, got {h}",
                )
            )

    for g, f in c.composable_pairs():
        if c.lookup(g, f) is None:
            violations.append(
                Violation(
                    law="totality",
                    witnesses=(g, f),
                    message=f"composite of {g} after {f} is missing",
                )
            )

    for m in c.morphisms:
        left = c.lookup(c.identities[m.cod], m.id)
        if left is not None and left != m.id:
            violations.append(
                Violation(
                    law="left-identity",
                    witnesses=(c.identities[m.cod], m.id),
                    message=f"identity after {m.id} gives {left}",
                )
            )
        right = c.lookup(m.id, c.identities[m.dom])
        if right is not None and right != m.id:
            violations.append(
                Violation(
                    law="right-identity",
                    witnesses=(m.id, c.identities[m.dom]),
                    message=f"{m.id} after identity gives {right}",
                )
            )

    for g, f in c.composable_pairs():
        gf = c.lookup(g, f)
        for h in c.outgoing(c.cod(g)):
            hg = c.lookup(h, g)
            if gf is None or hg is None:
                continue
            left = c.lookup(h, gf)
            right = c.lookup(hg, f)
            if left is None or right is None:
                continue
            if left != right:
                violations.append(
                    Violation(
                        law="associativity",
                        witnesses=(h, g, f),
                        message=f"({h} {g}) {f} = {right} but {h} ({g} {f}) = {left}",
                    )
                )

    logger.debug(
        "Validated category",
        extra={
            "extra_data": {
                "objects": len(c.objects),
                "morphisms": len(c.morphisms),
                "violations": len(violations),
            }
        },
    )
    return violations


def require_valid(category: FinCategory) -> FinCategory:
    """
    Raises:
        CategoryError: If any category law fails
    """
    violations = validate_category(category)
    if violations:
        raise CategoryError(
            f"not a category: {violations[0].message}",
            details={"violations": [v.to_dict() for v in violations]},
        )
    return category


def arr_category(category: FinCategory) -> FinCategory:
    """The discrete category whose objects are the morphisms of ``category``."""
    return discrete(m.id for m in category.morphisms)


def is_preorder(category: FinCategory) -> bool:
    """At most one morphism between any two objects."""
    return all(
        len(category.hom(a, b)) <= 1 for a in category.objects for b in category.objects
    )
