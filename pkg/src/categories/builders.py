"""
Ready-made finite categories and diagrams.
"""

import itertools
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.categories.category import FinCategory, MorphismSpec, discrete
from src.categories.functor import Functor, constant_diagram, diagram_from_family
from src.utils.exceptions import FeasibilityError

__all__ = [
    "MAX_SET_CARRIER",
    "constant_diagram",
    "cospan",
    "diagram_from_family",
    "discrete",
    "family_diagram",
    "from_arrows",
    "parallel_pair",
    "set_category",
    "set_function",
    "subset_label",
    "terminal_category",
    "total_order",
]

# Set(U) for |U| = 3 already has 170 morphisms
MAX_SET_CARRIER = 3


def from_arrows(
    objects: Sequence[str],
    arrows: Iterable[Tuple[str, str, str]],
    composites: Iterable[Tuple[str, str, str]] = (),
) -> FinCategory:
    """
    A category from its non-identity arrows ``(id, dom, cod)``.

    Identities are named ``id_<object>`` and their composites are filled in, so
    ``composites`` only lists products of two non-identity arrows.
    """
    identities = {obj: f"id_{obj}" for obj in objects}
    arrows = list(arrows)
    morphisms = [MorphismSpec(id=identities[o], dom=o, cod=o) for o in objects]
    morphisms += [MorphismSpec(id=name, dom=dom, cod=cod) for name, dom, cod in arrows]
    table: List[Tuple[str, str, str]] = []
    for m in morphisms:
        if m.id == identities[m.dom]:
            table.append((m.id, m.id, m.id))
            continue
        table.append((identities[m.cod], m.id, m.id))
        table.append((m.id, identities[m.dom], m.id))
    table.extend(composites)
    return FinCategory(
        objects=tuple(objects),
        morphisms=tuple(morphisms),
        identities=identities,
        compose=tuple(table),
    )


def terminal_category() -> FinCategory:
    return discrete(["*"])


def parallel_pair() -> FinCategory:
    """Two parallel arrows f, g : A -> B."""
    return from_arrows(["A", "B"], [("f", "A", "B"), ("g", "A", "B")])


def cospan() -> FinCategory:
    """f : A -> C <- B : g, the shape of a pullback."""
    return from_arrows(["A", "B", "C"], [("f", "A", "C"), ("g", "B", "C")])


def total_order(labels: Sequence[str]) -> FinCategory:
    """
    A finite total order as a preorder category.

    ``labels`` run from least to greatest and there is an arrow a -> b exactly
    when a >= b, so the apex of a limit is the least upper bound of the image.
    """
    labels = list(labels)
    arrows = []
    for i, a in enumerate(labels):
        for b in labels[:i]:
            arrows.append((f"{a}>{b}", a, b))
    name = {(a, a): f"id_{a}" for a in labels}
    name.update({(a, b): n for n, a, b in arrows})
    composites = []
    for i, a in enumerate(labels):
        for j in range(i):
            for k in range(j):
                b, c = labels[j], labels[k]
                composites.append((name[(b, c)], name[(a, b)], name[(a, c)]))
    return from_arrows(labels, arrows, composites)


def subset_label(elements: Iterable[str]) -> str:
    return "{" + ",".join(sorted(elements)) + "}"


def _function_label(dom: str, cod: str, pairs: Sequence[Tuple[str, str]]) -> str:
    return f"{dom}->{cod}[" + ",".join(f"{a}>{b}" for a, b in pairs) + "]"


def set_function(label: str) -> Dict[str, str]:
    """The graph of a morphism of ``set_category`` read back from its label."""
    body = label[label.index("[") + 1 : -1]
    if not body:
        return {}
    return dict(pair.split(">", 1) for pair in body.split(","))


def set_category(
    carrier: Iterable[str], *, max_size: Optional[int] = MAX_SET_CARRIER
) -> FinCategory:
    """
    Set(U): every subset of ``carrier`` as an object and every function between
    them as a morphism.

    Raises:
        FeasibilityError: If the carrier has more than ``max_size`` elements
    """
    elements = sorted(set(carrier))
    if max_size is not None and len(elements) > max_size:
        raise FeasibilityError(
            f"Set(U) for a {len(elements)}-element carrier is too large",
            limit=max_size,
            requested=len(elements),
        )
    subsets = [
        subset
        for size in range(len(elements) + 1)
        for subset in itertools.combinations(elements, size)
    ]
    labels = {subset: subset_label(subset) for subset in subsets}

    morphisms: List[MorphismSpec] = []
    graphs: Dict[str, Dict[str, str]] = {}
    by_graph: Dict[Tuple[str, str, Tuple[str, ...]], str] = {}
    identities: Dict[str, str] = {}
    for dom in subsets:
        for cod in subsets:
            for values in itertools.product(cod, repeat=len(dom)):
                pairs = list(zip(dom, values))
                label = _function_label(labels[dom], labels[cod], pairs)
                morphisms.append(MorphismSpec(id=label, dom=labels[dom], cod=labels[cod]))
                graphs[label] = dict(pairs)
                by_graph[(labels[dom], labels[cod], values)] = label
                if dom == cod and tuple(values) == dom:
                    identities[labels[dom]] = label

    domain_elements = {labels[s]: s for s in subsets}
    outgoing: Dict[str, List[MorphismSpec]] = {}
    for m in morphisms:
        outgoing.setdefault(m.dom, []).append(m)
    table = []
    for f in morphisms:
        for g in outgoing.get(f.cod, []):
            values = tuple(graphs[g.id][graphs[f.id][a]] for a in domain_elements[f.dom])
            table.append((g.id, f.id, by_graph[(f.dom, g.cod, values)]))

    return FinCategory(
        objects=tuple(labels[s] for s in subsets),
        morphisms=tuple(morphisms),
        identities=identities,
        compose=tuple(table),
    )


def family_diagram(
    index_tags: Sequence[str], target: FinCategory, images: Sequence[str]
) -> Functor:
    """A diagram on the discrete category ``index_tags`` picking ``images`` in order."""
    return diagram_from_family(discrete(index_tags), target, dict(zip(index_tags, images)))
