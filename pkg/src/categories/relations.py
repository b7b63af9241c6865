"""
Rel(U) and Set(U) over a finite carrier.

Objects are subsets of the carrier, morphisms are relations (functions for Set).
Products in Rel and coproducts in Rel and Set are built on tagged tokens <x, i>,
which are fresh carrier elements distinct from everything in U. Universality is
checked by enumerating every candidate mediating row and keeping the ones whose
composites with the legs come out right.
"""

import itertools
from dataclasses import dataclass, field
from typing import (
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Literal,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from src.config import get_settings
from src.utils.exceptions import CarrierOverflowError, CategoryError, NonFunctionalError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Element = Hashable
Diagram = Mapping[Hashable, FrozenSet[Element]]


@dataclass(frozen=True)
class Tagged:
    """The token <value, tag>; never equal to a carrier element."""

    value: Element
    tag: Hashable

    def __str__(self) -> str:
        return f"<{self.value},{self.tag}>"


def _key(element: Element) -> str:
    return str(element)


def _sorted(elements: Iterable[Element]) -> List[Element]:
    return sorted(elements, key=_key)


@dataclass(frozen=True)
class Relation:
    """A relation from ``dom`` to ``cod``."""

    dom: FrozenSet[Element]
    cod: FrozenSet[Element]
    pairs: FrozenSet[Tuple[Element, Element]]

    def __post_init__(self) -> None:
        for a, b in self.pairs:
            if a not in self.dom or b not in self.cod:
                raise CategoryError(
                    f"pair ({a}, {b}) leaves the domain or codomain",
                    details={"pair": [_key(a), _key(b)]},
                )

    @classmethod
    def identity(cls, elements: Iterable[Element]) -> "Relation":
        obj = frozenset(elements)
        return cls(obj, obj, frozenset((x, x) for x in obj))

    @classmethod
    def of(
        cls,
        dom: Iterable[Element],
        cod: Iterable[Element],
        pairs: Iterable[Tuple[Element, Element]],
    ) -> "Relation":
        return cls(frozenset(dom), frozenset(cod), frozenset(pairs))

    @classmethod
    def from_function(
        cls, dom: Iterable[Element], cod: Iterable[Element], mapping: Mapping[Element, Element]
    ) -> "Relation":
        return cls.of(dom, cod, mapping.items())

    def image(self, a: Element) -> FrozenSet[Element]:
        return frozenset(b for x, b in self.pairs if x == a)

    def compose(self, first: "Relation") -> "Relation":
        """``self`` after ``first``."""
        if first.cod != self.dom:
            raise CategoryError("relations are not composable")
        step: Dict[Element, List[Element]] = {}
        for b, c in self.pairs:
            step.setdefault(b, []).append(c)
        pairs = frozenset((a, c) for a, b in first.pairs for c in step.get(b, ()))
        return Relation(first.dom, self.cod, pairs)

    def dagger(self) -> "Relation":
        """The converse relation, cod -> dom."""
        return Relation(self.cod, self.dom, frozenset((b, a) for a, b in self.pairs))

    def is_function(self) -> bool:
        return all(len(self.image(a)) == 1 for a in self.dom)

    def to_dict(self) -> Dict[str, object]:
        return {
            "dom": [_key(x) for x in _sorted(self.dom)],
            "cod": [_key(x) for x in _sorted(self.cod)],
            "pairs": sorted([_key(a), _key(b)] for a, b in self.pairs),
        }


def dagger_of(relation: Relation) -> Relation:
    return relation.dagger()


@dataclass(frozen=True)
class RelCone:
    """
    An apex with one leg per tag. Cone legs run apex -> F(i); cocone legs run
    F(i) -> apex.
    """

    apex: FrozenSet[Element]
    legs: Dict[Hashable, Relation] = field(hash=False)
    kind: Literal["cone", "cocone"] = "cone"

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "apex": [_key(x) for x in _sorted(self.apex)],
            "legs": {_key(tag): leg.to_dict() for tag, leg in self.legs.items()},
        }


@dataclass(frozen=True)
class RelUniverse:
    """A finite carrier U; Rel(U) has its subsets as objects."""

    carrier: FrozenSet[Element]

    @classmethod
    def of(cls, elements: Iterable[Element]) -> "RelUniverse":
        return cls(frozenset(elements))

    def objects(self) -> Iterator[FrozenSet[Element]]:
        elements = _sorted(self.carrier)
        for size in range(len(elements) + 1):
            for subset in itertools.combinations(elements, size):
                yield frozenset(subset)

    def relations(self, dom: FrozenSet[Element], cod: FrozenSet[Element]) -> Iterator[Relation]:
        grid = [(a, b) for a in _sorted(dom) for b in _sorted(cod)]
        for mask in range(1 << len(grid)):
            yield Relation(
                dom, cod, frozenset(p for i, p in enumerate(grid) if mask >> i & 1)
            )

    def functions(self, dom: FrozenSet[Element], cod: FrozenSet[Element]) -> Iterator[Relation]:
        source = _sorted(dom)
        for values in itertools.product(_sorted(cod), repeat=len(source)):
            yield Relation(dom, cod, frozenset(zip(source, values)))


def _tagged_carrier(diagram: Diagram, max_carrier: Optional[int]) -> FrozenSet[Tagged]:
    limit = get_settings().MAX_CARRIER if max_carrier is None else max_carrier
    apex = frozenset(Tagged(x, tag) for tag, obj in diagram.items() for x in obj)
    if len(apex) > limit:
        raise CarrierOverflowError(len(apex), limit=limit)
    return apex


def rel_product(diagram: Diagram, *, max_carrier: Optional[int] = None) -> RelCone:
    """
    The product cone in Rel: apex P = {<x, i>} and legs pi_i = {(<x, i>, x)}.

    Raises:
        CarrierOverflowError: If P has more than ``max_carrier`` elements
    """
    apex = _tagged_carrier(diagram, max_carrier)
    legs = {
        tag: Relation(apex, frozenset(obj), frozenset((Tagged(x, tag), x) for x in obj))
        for tag, obj in diagram.items()
    }
    logger.debug(
        "Built relational product",
        extra={"extra_data": {"tags": len(legs), "carrier": len(apex)}},
    )
    return RelCone(apex=apex, legs=legs, kind="cone")


def rel_coproduct(diagram: Diagram, *, max_carrier: Optional[int] = None) -> RelCone:
    """The coproduct cocone in Rel: the product with every leg daggered."""
    product = rel_product(diagram, max_carrier=max_carrier)
    return RelCone(
        apex=product.apex,
        legs={tag: leg.dagger() for tag, leg in product.legs.items()},
        kind="cocone",
    )


def set_coproduct(diagram: Diagram, *, max_carrier: Optional[int] = None) -> RelCone:
    """
    The coproduct cocone in Set, i.e. the tagged disjoint union with its injections.

    Raises:
        NonFunctionalError: If some injection is not a function
    """
    cocone = rel_coproduct(diagram, max_carrier=max_carrier)
    for tag, leg in cocone.legs.items():
        if not leg.is_function():
            raise NonFunctionalError(f"injection for {tag} is not a function", leg=_key(tag))
    return cocone


def product_mediator(product: RelCone, cone: RelCone) -> Relation:
    """u = {(a, <x, i>) | a R_i x} for a cone (A, R_i)."""
    pairs = frozenset(
        (a, Tagged(x, tag)) for tag, leg in cone.legs.items() for a, x in leg.pairs
    )
    return Relation(cone.apex, product.apex, pairs)


def coproduct_mediator(
    coproduct: RelCone, cocone: RelCone, *, functional: bool = False
) -> Relation:
    """
    u = {(<x, i>, b) | x R_i b} for a cocone (B, R_i).

    Raises:
        NonFunctionalError: If ``functional`` and a leg or u is not a function
    """
    if functional:
        for tag, leg in cocone.legs.items():
            if not leg.is_function():
                raise NonFunctionalError(f"leg {tag} is not a function", leg=_key(tag))
    pairs = frozenset(
        (Tagged(x, tag), b) for tag, leg in cocone.legs.items() for x, b in leg.pairs
    )
    mediator = Relation(coproduct.apex, cocone.apex, pairs)
    if functional and not mediator.is_function():
        raise NonFunctionalError("mediating relation is not a function")
    return mediator


def _subsets(elements: Sequence[Element]) -> Iterator[FrozenSet[Element]]:
    for mask in range(1 << len(elements)):
        yield frozenset(e for i, e in enumerate(elements) if mask >> i & 1)


class _RowIndex:
    """Every candidate row of a mediator into a product, keyed by what the legs see."""

    def __init__(self, product: RelCone):
        self.tags = list(product.legs)
        self.product = product
        self.rows: Dict[Tuple[FrozenSet[Element], ...], List[FrozenSet[Element]]] = {}
        for row in _subsets(_sorted(product.apex)):
            self.rows.setdefault(self.signature(row), []).append(row)

    def signature(self, row: FrozenSet[Element]) -> Tuple[FrozenSet[Element], ...]:
        point = Relation(frozenset(["*"]), self.product.apex, frozenset(("*", p) for p in row))
        return tuple(self.product.legs[tag].compose(point).image("*") for tag in self.tags)


def mediating_relations(
    product: RelCone, cone: RelCone, *, index: Optional[_RowIndex] = None
) -> List[Relation]:
    """Every u : A -> P with pi_i u = R_i for all i, by enumeration of rows."""
    index = index or _RowIndex(product)
    apex = _sorted(cone.apex)
    options = []
    for a in apex:
        wanted = tuple(cone.legs[tag].image(a) for tag in index.tags)
        options.append(index.rows.get(wanted, []))
    return [
        Relation(
            cone.apex,
            product.apex,
            frozenset((a, p) for a, row in zip(apex, rows) for p in row),
        )
        for rows in itertools.product(*options)
    ]


def _cocone_constraints(
    coproduct: RelCone, cocone: RelCone
) -> Optional[List[Tuple[FrozenSet[Element], FrozenSet[Element]]]]:
    """
    One (iota_i(x), R_i(x)) pair per tag i and x in F(i): u must send the
    injected elements of x exactly onto R_i(x). None when the legs do not match.
    """
    constraints = []
    for tag, leg in cocone.legs.items():
        injection = coproduct.legs.get(tag)
        if injection is None or injection.dom != leg.dom or injection.cod != coproduct.apex:
            return None
        for x in _sorted(leg.dom):
            constraints.append((injection.image(x), leg.image(x)))
    return constraints


def _iter_mediators(
    coproduct: RelCone, cocone: RelCone, *, functional: bool
) -> Iterator[Relation]:
    constraints = _cocone_constraints(coproduct, cocone)
    if constraints is None:
        return
    if any(not sources and wanted for sources, wanted in constraints):
        return

    codomain = frozenset(cocone.apex)
    sources = _sorted(coproduct.apex)
    position = {p: i for i, p in enumerate(sources)}
    # u(p) can only hold what every constraint through p asks for
    allowed = {p: codomain for p in sources}
    closing: Dict[int, List[Tuple[FrozenSet[Element], FrozenSet[Element]]]] = {}
    for members, wanted in constraints:
        for p in members:
            allowed[p] = allowed[p] & wanted
        if members:
            last = max(position[p] for p in members)
            closing.setdefault(last, []).append((members, wanted))

    def rows(p: Element) -> List[FrozenSet[Element]]:
        if functional:
            return [frozenset([b]) for b in _sorted(allowed[p])]
        return list(_subsets(_sorted(allowed[p])))

    choices = [rows(p) for p in sources]
    chosen: Dict[Element, FrozenSet[Element]] = {}

    def extend(i: int) -> Iterator[Relation]:
        if i == len(sources):
            yield Relation(
                coproduct.apex,
                cocone.apex,
                frozenset((p, b) for p, row in chosen.items() for b in row),
            )
            return
        p = sources[i]
        for row in choices[i]:
            chosen[p] = row
            if all(
                frozenset().union(*(chosen[q] for q in members)) == wanted
                for members, wanted in closing.get(i, ())
            ):
                yield from extend(i + 1)
        chosen.pop(p, None)

    for mediator in extend(0):
        if all(
            mediator.compose(coproduct.legs[tag]) == leg for tag, leg in cocone.legs.items()
        ):
            yield mediator


def mediating_morphisms(
    coproduct: RelCone, cocone: RelCone, *, functional: bool = False
) -> List[Relation]:
    """
    Every u : P -> B with u iota_i = R_i for all i, composed through the
    coproduct's own injections. With ``functional`` only functions are
    candidates, as in Set.
    """
    return list(_iter_mediators(coproduct, cocone, functional=functional))


def is_limit_among(product: RelCone, cones: Iterable[RelCone]) -> bool:
    """Every cone factors through ``product`` by exactly one relation."""
    index = _RowIndex(product)
    return all(len(mediating_relations(product, p, index=index)) == 1 for p in cones)


def is_colimit_among(
    coproduct: RelCone, cocones: Iterable[RelCone], *, functional: bool = False
) -> bool:
    """Every cocone is reached from ``coproduct`` by exactly one mediator."""
    return all(
        len(list(itertools.islice(_iter_mediators(coproduct, p, functional=functional), 2)))
        == 1
        for p in cocones
    )


def candidate_cones(
    universe: RelUniverse, diagram: Diagram, *, max_apex: Optional[int] = None
) -> Iterator[RelCone]:
    """All cones (A, R_i) with A a subset of the carrier of at most ``max_apex`` elements."""
    tags = list(diagram)
    for apex in universe.objects():
        if max_apex is not None and len(apex) > max_apex:
            continue
        choices = [list(universe.relations(apex, frozenset(diagram[t]))) for t in tags]
        for legs in itertools.product(*choices):
            yield RelCone(apex=apex, legs=dict(zip(tags, legs)), kind="cone")


def candidate_cocones(
    universe: RelUniverse,
    diagram: Diagram,
    *,
    functional: bool = False,
    max_apex: Optional[int] = None,
) -> Iterator[RelCone]:
    """All cocones (B, R_i); with ``functional`` the legs are functions."""
    tags = list(diagram)
    for apex in universe.objects():
        if max_apex is not None and len(apex) > max_apex:
            continue
        build = universe.functions if functional else universe.relations
        choices = [list(build(frozenset(diagram[t]), apex)) for t in tags]
        for legs in itertools.product(*choices):
            yield RelCone(apex=apex, legs=dict(zip(tags, legs)), kind="cocone")
