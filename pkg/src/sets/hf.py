"""
Ackermann coding of hereditarily finite sets.

The set with code c has as members exactly the sets whose codes are the positions
of the one bits of c. The first T(n) codes are exactly the sets of rank below n,
where T(0) = 0 and T(k + 1) = 2 ** T(k).
"""

from typing import Iterable, Tuple

EMPTY = 0


def members(code: int) -> Tuple[int, ...]:
    """Codes of the members of a set, ascending."""
    if code < 0:
        raise ValueError("codes are natural numbers")
    result = []
    position = 0
    while code:
        if code & 1:
            result.append(position)
        code >>= 1
        position += 1
    return tuple(result)


def encode(elements: Iterable[int]) -> int:
    code = 0
    for element in elements:
        code |= 1 << element
    return code


def singleton(code: int) -> int:
    return 1 << code


def is_member(a: int, b: int) -> bool:
    return (b >> a) & 1 == 1


def rank(code: int) -> int:
    """Rank of a set: 0 for the empty set, else one more than its highest member."""
    if code == EMPTY:
        return 0
    return 1 + max(rank(m) for m in members(code))


def tower(n: int) -> int:
    """|V_n|, the number of sets of rank below n."""
    if n < 0:
        raise ValueError("ranks are natural numbers")
    size = 0
    for _ in range(n):
        size = 1 << size
    return size


def vn_code(m: int) -> int:
    """Code of the set V_m itself (all codes below T(m))."""
    return (1 << tower(m)) - 1


def describe(code: int) -> str:
    """Brace notation, e.g. 3 -> '{{}, {{}}}'."""
    return "{" + ", ".join(describe(m) for m in members(code)) + "}"
