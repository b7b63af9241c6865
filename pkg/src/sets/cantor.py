"""
Cantor-style cardinality checks and structural properties of finite structures.
"""

import itertools
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx

from src.sets.structure import FiniteStructure
from src.utils.exceptions import FeasibilityError, PowersetNotPresentError, StructureError
from src.utils.logging import get_logger

logger = get_logger(__name__)

# Largest set whose subsets are enumerated
MAX_POWERSET_BASE = 20


def _require(structure: FiniteStructure, element: str) -> None:
    if element not in structure:
        raise StructureError(
            f"{element} is not in the universe", details={"element": element}
        )


def singleton_images(structure: FiniteStructure, element: str) -> List[str]:
    """
    The elements {y} for y in ``element``, in member order.

    Raises:
        PowersetNotPresentError: If some singleton is missing from the structure
    """
    _require(structure, element)
    images = []
    for member in sorted(structure.members_of(element), key=structure.universe.index):
        image = structure.element_with([member])
        if image is None:
            raise PowersetNotPresentError(
                f"the singleton of {member} is not in the structure", element=member
            )
        images.append(image)
    return images


def singleton_image_check(structure: FiniteStructure, element: str) -> Tuple[int, int]:
    """
    Sizes of the singleton image of ``element`` and of its powerset.

    Atoms never stand in for the empty subset.

    Raises:
        PowersetNotPresentError: If a singleton or a subset is missing
        FeasibilityError: If ``element`` has more than MAX_POWERSET_BASE members
    """
    images = singleton_images(structure, element)
    members = sorted(structure.members_of(element))
    if len(members) > MAX_POWERSET_BASE:
        raise FeasibilityError(
            f"powerset of a {len(members)}-element set is too large to enumerate",
            limit=MAX_POWERSET_BASE,
            requested=len(members),
        )
    subsets = 0
    for size in range(len(members) + 1):
        for subset in itertools.combinations(members, size):
            if structure.element_with(subset) is None:
                raise PowersetNotPresentError(
                    f"subset {{{', '.join(subset)}}} of {element} is not in the structure",
                    element=element,
                )
            subsets += 1
    logger.debug(
        "Singleton image check",
        extra={
            "extra_data": {
                "element": element,
                "singletons": len(set(images)),
                "subsets": subsets,
            }
        },
    )
    return len(set(images)), subsets


def is_cantorian(structure: FiniteStructure, element: str) -> bool:
    """``element`` has as many members as its singleton image."""
    try:
        images = singleton_images(structure, element)
    except PowersetNotPresentError:
        return False
    return len(set(images)) == len(structure.members_of(element))


def is_strongly_cantorian(structure: FiniteStructure, element: str) -> bool:
    """The literal map y -> {y} on ``element`` exists and is injective."""
    try:
        images = singleton_images(structure, element)
    except PowersetNotPresentError:
        return False
    members = sorted(structure.members_of(element), key=structure.universe.index)
    mapping = dict(zip(members, images))
    return len(mapping) == len(members) and len(set(mapping.values())) == len(members)


def weak_extensionality_violations(structure: FiniteStructure) -> List[Tuple[str, str]]:
    """Pairs of distinct non-empty non-atoms with the same members."""
    seen: Dict[FrozenSet[str], str] = {}
    violations = []
    for element in structure.universe:
        if structure.is_atom(element):
            continue
        members = structure.members_of(element)
        if not members:
            continue
        if members in seen:
            violations.append((seen[members], element))
        else:
            seen[members] = element
    return violations


def satisfies_weak_extensionality(structure: FiniteStructure) -> bool:
    """Extensionality restricted to non-empty sets."""
    return not weak_extensionality_violations(structure)


def is_well_founded(structure: FiniteStructure) -> bool:
    """The membership relation has no cycles (self-membership included)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(structure.universe)
    graph.add_edges_from(structure.membership)
    return nx.is_directed_acyclic_graph(graph)
