"""
Formula generators for sweeps and randomized checks.
"""

import random
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from src.logic.syntax import (
    Formula,
    NodeKind,
    Term,
    conj,
    disj,
    equal,
    exists,
    forall,
    free_variables_ordered,
    iff,
    implies,
    member,
    neg,
    var,
)

VARIABLE_NAMES = ("x", "y", "z", "w")

BINARY_BUILDERS: Tuple[Callable[[Formula, Formula], Formula], ...] = (
    conj,
    disj,
    implies,
    iff,
)

Atom = Tuple[NodeKind, int, int]


def _restricted_growth(length: int, max_blocks: int) -> Iterator[Tuple[int, ...]]:
    """Sequences where each value is at most one more than every earlier maximum."""

    def extend(prefix: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for value in range(min(top + 2, max_blocks)):
            prefix.append(value)
            yield from extend(prefix, max(top, value))
            prefix.pop()

    yield from extend([], -1)


def _slot_blocks(max_vars: int, max_atoms: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    for count in range(1, max_atoms + 1):
        for slots in _restricted_growth(2 * count, max_vars):
            yield count, slots


def _atoms_for(count: int, slots: Tuple[int, ...], mask: int) -> Tuple[Atom, ...]:
    return tuple(
        (
            NodeKind.MEMBER if (mask >> i) & 1 else NodeKind.EQUAL,
            slots[2 * i],
            slots[2 * i + 1],
        )
        for i in range(count)
    )


def atom_sequences(max_vars: int, max_atoms: int) -> Iterator[Tuple[Atom, ...]]:
    """
    Every sequence of 1..max_atoms atoms over at most ``max_vars`` variables.

    Variables are numbered in order of first occurrence, so sequences that differ
    only by renaming variables are generated once.
    """
    for count, slots in _slot_blocks(max_vars, max_atoms):
        for mask in range(2**count):
            yield _atoms_for(count, slots, mask)


def corpus_size(max_vars: int, max_atoms: int) -> int:
    return sum(2**count for count, _ in _slot_blocks(max_vars, max_atoms))


def _atom(kind: NodeKind, left: Term, right: Term) -> Formula:
    return member(left, right) if kind is NodeKind.MEMBER else equal(left, right)


_NAMES = tuple(var(name) for name in VARIABLE_NAMES)


def assemble(atoms: Sequence[Atom], index: int = 0) -> Formula:
    """
    Combine atoms into one formula with connectives picked from ``index``.

    Every third formula negates its first atom and every fourth binds its first
    variable, so connectives and quantifiers are all represented in a sweep.
    """
    parts = [_atom(kind, _NAMES[s], _NAMES[t]) for kind, s, t in atoms]
    if index % 3 == 0:
        parts[0] = neg(parts[0])
    result = parts[0]
    for position, part in enumerate(parts[1:]):
        build = BINARY_BUILDERS[(index + position) % len(BINARY_BUILDERS)]
        result = build(result, part)
    if index % 4 == 0:
        # the left variable of the first atom occurs first
        result = forall(_NAMES[atoms[0][1]], result)
    return result


def exhaustive_formulas(
    max_vars: int = 4, max_atoms: int = 5, *, stride: int = 1, offset: int = 0
) -> Iterator[Formula]:
    """
    The plain formulas of the atom-sequence corpus, in a fixed order.

    With ``stride`` > 1 only positions congruent to ``offset`` are built, which
    gives a deterministic sample spread evenly over every atom count.
    """
    if stride < 1:
        raise ValueError("stride must be positive")
    index = 0
    for count, slots in _slot_blocks(max_vars, max_atoms):
        block = 2**count
        for mask in range((offset - index) % stride, block, stride):
            yield assemble(_atoms_for(count, slots, mask), index + mask)
        index += block


def random_formula(
    rng: random.Random,
    *,
    variables: Sequence[str] = VARIABLE_NAMES,
    max_depth: int = 3,
    max_atoms: Optional[int] = None,
) -> Formula:
    """A random plain formula; ``max_depth`` bounds quantifier nesting."""
    budget = [max_atoms if max_atoms is not None else 2 ** (max_depth + 1)]

    def build(depth: int, quantifiers: int) -> Formula:
        roll = rng.random()
        if budget[0] <= 1 or depth >= max_depth + 2 or roll < 0.3:
            budget[0] -= 1
            kind = rng.choice((NodeKind.MEMBER, NodeKind.EQUAL))
            return _atom(kind, var(rng.choice(variables)), var(rng.choice(variables)))
        if roll < 0.45:
            return neg(build(depth + 1, quantifiers))
        if roll < 0.7 and quantifiers < max_depth:
            binder = var(rng.choice(variables))
            quantifier = rng.choice((forall, exists))
            return quantifier(binder, build(depth + 1, quantifiers + 1))
        builder = rng.choice(BINARY_BUILDERS)
        return builder(build(depth + 1, quantifiers), build(depth + 1, quantifiers))

    return build(0, 0)


def random_closed_formula(
    rng: random.Random,
    *,
    variables: Sequence[str] = VARIABLE_NAMES[:3],
    max_depth: int = 3,
) -> Formula:
    """
    A random sentence of quantifier depth at most ``max_depth``.

    Free variables are bound by leading quantifiers; candidates that end up too
    deep are drawn again.
    """
    while True:
        formula = random_formula(rng, variables=variables, max_depth=max_depth)
        for name in reversed(free_variables_ordered(formula)):
            quantifier = rng.choice((forall, exists))
            formula = quantifier(var(name), formula)
        if quantifier_depth(formula) <= max_depth:
            return formula


def quantifier_depth(ast: Formula) -> int:
    below = max((quantifier_depth(child) for child in ast.children), default=0)
    return below + (1 if ast.is_quantifier else 0)
