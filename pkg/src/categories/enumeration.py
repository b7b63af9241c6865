"""
Exhaustive enumeration of small finite categories up to isomorphism.

Shapes (how many arrows run between which objects) are generated in
lexicographic order, composition tables are filled in by backtracking with an
associativity check after every cell, and each table is reduced to a canonical
form under object and arrow relabelling so that every isomorphism class is
produced once.
"""

import itertools
import string
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from src.categories.builders import from_arrows
from src.categories.category import FinCategory
from src.config import get_settings
from src.utils.exceptions import FeasibilityError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Arrow = Tuple[int, int]
Table = Dict[Tuple[int, int], int]


class _Shape:
    """Objects 0..n-1 with identity i for object i and arrow n + j for arrows[j]."""

    def __init__(self, n: int, arrows: Sequence[Arrow]):
        self.n = n
        self.arrows = list(arrows)
        self.dom = list(range(n)) + [d for d, _ in self.arrows]
        self.cod = list(range(n)) + [c for _, c in self.arrows]
        self.non_identity = list(range(n, n + len(self.arrows)))
        self.pairs = [
            (g, f)
            for f in self.non_identity
            for g in self.non_identity
            if self.cod[f] == self.dom[g]
        ]
        self.options = {
            (g, f): self.hom(self.dom[f], self.cod[g]) for g, f in self.pairs
        }
        self.triples = [
            (h, g, f)
            for g, f in self.pairs
            for h in self.non_identity
            if self.dom[h] == self.cod[g]
        ]

    def hom(self, a: int, b: int) -> List[int]:
        found = [a] if a == b else []
        return found + [m for m in self.non_identity if self.dom[m] == a and self.cod[m] == b]

    def compose(self, table: Table, g: int, f: int) -> Optional[int]:
        if g < self.n:
            return f
        if f < self.n:
            return g
        return table.get((g, f))

    def associative_so_far(self, table: Table) -> bool:
        for h, g, f in self.triples:
            gf = self.compose(table, g, f)
            hg = self.compose(table, h, g)
            if gf is None or hg is None:
                continue
            left = self.compose(table, h, gf)
            right = self.compose(table, hg, f)
            if left is not None and right is not None and left != right:
                return False
        return True


def _tables(shape: _Shape) -> Iterator[Table]:
    table: Table = {}

    def fill(k: int) -> Iterator[Table]:
        if k == len(shape.pairs):
            yield dict(table)
            return
        pair = shape.pairs[k]
        for choice in shape.options[pair]:
            table[pair] = choice
            if shape.associative_so_far(table):
                yield from fill(k + 1)
        del table[pair]

    if all(shape.options[pair] for pair in shape.pairs):
        yield from fill(0)


def _canonical_shape(n: int, arrows: Sequence[Arrow]) -> Tuple[Arrow, ...]:
    return min(
        tuple(sorted((perm[d], perm[c]) for d, c in arrows))
        for perm in itertools.permutations(range(n))
    )


def _canonical_form(shape: _Shape, table: Table) -> Tuple[object, ...]:
    best: Optional[Tuple[object, ...]] = None
    n = shape.n
    for perm in itertools.permutations(range(n)):
        groups: Dict[Arrow, List[int]] = {}
        for m in shape.non_identity:
            groups.setdefault((perm[shape.dom[m]], perm[shape.cod[m]]), []).append(m)
        keys = sorted(groups)
        for orders in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
            relabel = {i: perm[i] for i in range(n)}
            position = n
            for order in orders:
                for m in order:
                    relabel[m] = position
                    position += 1
            entries = tuple(
                sorted((relabel[g], relabel[f], relabel[h]) for (g, f), h in table.items())
            )
            arrows = tuple(k for k in keys for _ in groups[k])
            form = (arrows, entries)
            if best is None or form < best:
                best = form
    assert best is not None
    return best


def _object_names(n: int) -> List[str]:
    if n <= len(string.ascii_uppercase):
        return list(string.ascii_uppercase[:n])
    return [f"O{i}" for i in range(n)]


def _to_category(shape: _Shape, table: Table) -> FinCategory:
    names = _object_names(shape.n)
    label = {i: f"id_{names[i]}" for i in range(shape.n)}
    label.update({m: f"f{m - shape.n}" for m in shape.non_identity})
    arrows = [(label[m], names[shape.dom[m]], names[shape.cod[m]]) for m in shape.non_identity]
    composites = [(label[g], label[f], label[h]) for (g, f), h in sorted(table.items())]
    return from_arrows(names, arrows, composites)


def iter_categories(
    max_morphisms: int, max_objects: Optional[int] = None
) -> Iterator[FinCategory]:
    """
    Every category with at most ``max_morphisms`` morphisms (identities included),
    one per isomorphism class, in a fixed order.

    Raises:
        FeasibilityError: If ``max_morphisms`` exceeds ENUMERATION_MAX_MORPHISMS
    """
    cap = get_settings().ENUMERATION_MAX_MORPHISMS
    if max_morphisms > cap:
        raise FeasibilityError(
            f"enumerating categories with {max_morphisms} morphisms exceeds the cap",
            limit=cap,
            requested=max_morphisms,
        )
    top = max_morphisms if max_objects is None else min(max_objects, max_morphisms)
    for n in range(top + 1):
        pairs = [(a, b) for a in range(n) for b in range(n)]
        seen: Set[Tuple[object, ...]] = set()
        for r in range(max_morphisms - n + 1):
            for arrows in itertools.combinations_with_replacement(pairs, r):
                if _canonical_shape(n, arrows) != tuple(arrows):
                    continue
                shape = _Shape(n, arrows)
                for table in _tables(shape):
                    form = _canonical_form(shape, table)
                    if form in seen:
                        continue
                    seen.add(form)
                    yield _to_category(shape, table)


def enumerate_categories(
    max_morphisms: int, max_objects: Optional[int] = None
) -> List[FinCategory]:
    categories = list(iter_categories(max_morphisms, max_objects))
    logger.debug(
        "Enumerated categories",
        extra={
            "extra_data": {
                "max_morphisms": max_morphisms,
                "max_objects": max_objects,
                "categories": len(categories),
            }
        },
    )
    return categories
