"""
Reflection experiments over the finite ranks V_n.
"""

import itertools
from typing import Iterable, List, Optional, Sequence

from src.logic.syntax import (
    Dialect,
    Formula,
    all_names,
    dialect_of,
    free_variables_ordered,
    fresh_name,
    var,
)
from src.logic.transform import relativize
from src.sets import hf
from src.sets.evaluation import eval_formula
from src.sets.structure import FiniteStructure, build_vn, vn_elements
from src.utils.exceptions import DialectError
from src.utils.logging import get_logger

logger = get_logger(__name__)


def reflects(phis: Sequence[Formula], ambient: FiniteStructure, m: int) -> bool:
    """
    True if every formula agrees with its relativization to V_m in ``ambient``,
    for every choice of parameters from V_m.
    """
    names = set().union(*(all_names(phi) for phi in phis)) if phis else set()
    constant = fresh_name("S", names | set(ambient.constants))
    code = str(hf.vn_code(m))
    if code not in ambient:
        return not phis
    structure = ambient.with_constants({constant: code})
    candidates = vn_elements(m)
    restrictor = var(constant)
    for phi in phis:
        relativized = relativize(phi, restrictor)
        params = free_variables_ordered(phi)
        for values in itertools.product(candidates, repeat=len(params)):
            valuation = dict(zip(params, values))
            if eval_formula(relativized, structure, valuation) != eval_formula(
                phi, structure, valuation
            ):
                return False
    return True


def reflect_search(
    phis: Sequence[Formula],
    n: int,
    *,
    ambient: Optional[FiniteStructure] = None,
    required: Iterable[int] = (),
    max_rank: int = 5,
) -> int:
    """
    Least m <= n such that V_m reflects every formula of ``phis`` inside V_n.

    ``required`` lists codes that V_m must contain. m = n is always accepted, since
    V_n reflects in itself.

    Raises:
        DialectError: If some formula is not plain
        FeasibilityError: If V_n cannot be materialized
    """
    for phi in phis:
        if dialect_of(phi) is not Dialect.PLAIN:
            raise DialectError(
                "reflection is checked for plain formulas",
                expected=Dialect.PLAIN.value,
                found=dialect_of(phi).value,
            )
    required = list(required)
    if ambient is None:
        ambient = build_vn(n, max_rank=max_rank)
    for m in range(n):
        if any(code >= hf.tower(m) for code in required):
            continue
        if reflects(phis, ambient, m):
            logger.debug(
                "Found reflecting rank",
                extra={"extra_data": {"rank": m, "ambient_rank": n, "formulas": len(phis)}},
            )
            return m
    return n


def reflecting_ranks(phis: Sequence[Formula], n: int, *, max_rank: int = 5) -> List[int]:
    """Every m < n for which V_m reflects ``phis`` in V_n, plus n itself."""
    ambient = build_vn(n, max_rank=max_rank)
    return [m for m in range(n) if reflects(phis, ambient, m)] + [n]
