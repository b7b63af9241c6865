"""
Finite membership structures.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from src.sets import hf
from src.utils.exceptions import FeasibilityError
from src.utils.logging import get_logger

logger = get_logger(__name__)

# Above this rank V_n no longer fits in memory
HARD_MAX_RANK = 5


class FiniteStructure(BaseModel):
    """
    A finite universe with a membership relation.

    Atoms are distinct elements without members; they are never identified with
    the empty set.
    """

    model_config = ConfigDict(frozen=True)

    universe: Tuple[str, ...] = Field(description="Element identifiers")
    membership: Tuple[Tuple[str, str], ...] = Field(
        default=(), description="Pairs (a, b) meaning a is a member of b"
    )
    constants: Dict[str, str] = Field(default_factory=dict)
    atoms: Tuple[str, ...] = ()

    _members: Dict[str, FrozenSet[str]] = PrivateAttr(default_factory=dict)
    _pairs: FrozenSet[Tuple[str, str]] = PrivateAttr(default=frozenset())
    _by_extension: Dict[FrozenSet[str], str] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def validate_structure(self) -> "FiniteStructure":
        elements = set(self.universe)
        if len(elements) != len(self.universe):
            raise ValueError("universe lists an element twice")
        for a, b in self.membership:
            if a not in elements or b not in elements:
                raise ValueError(f"membership pair ({a}, {b}) leaves the universe")
        for name, element in self.constants.items():
            if element not in elements:
                raise ValueError(f"constant {name} denotes {element}, not in the universe")
        atoms = set(self.atoms)
        if not atoms <= elements:
            raise ValueError("atoms must belong to the universe")
        if any(b in atoms for _, b in self.membership):
            raise ValueError("atoms have no members")
        return self

    def model_post_init(self, __context: object) -> None:
        members: Dict[str, set] = {element: set() for element in self.universe}
        for a, b in self.membership:
            members[b].add(a)
        self._members = {element: frozenset(found) for element, found in members.items()}
        self._pairs = frozenset(self.membership)
        atoms = set(self.atoms)
        by_extension: Dict[FrozenSet[str], str] = {}
        for element in self.universe:
            if element not in atoms:
                by_extension.setdefault(self._members[element], element)
        self._by_extension = by_extension

    def __contains__(self, element: object) -> bool:
        return element in self._members

    def members_of(self, element: str) -> FrozenSet[str]:
        return self._members[element]

    def is_member(self, a: str, b: str) -> bool:
        return (a, b) in self._pairs

    def is_atom(self, element: str) -> bool:
        return element in self.atoms

    def element_with(self, extension: Iterable[str]) -> Optional[str]:
        """The first non-atom whose members are exactly ``extension``, if any."""
        return self._by_extension.get(frozenset(extension))

    def restrict(self, elements: Iterable[str]) -> "FiniteStructure":
        """The substructure on ``elements``, keeping the constants that survive."""
        wanted = set(elements)
        keep = [e for e in self.universe if e in wanted]
        kept = set(keep)
        return FiniteStructure(
            universe=tuple(keep),
            membership=tuple((a, b) for a, b in self.membership if a in kept and b in kept),
            constants={k: v for k, v in self.constants.items() if v in kept},
            atoms=tuple(a for a in self.atoms if a in kept),
        )

    def extension_of(self, element: str) -> "FiniteStructure":
        """The substructure on the members of ``element``."""
        return self.restrict(self.members_of(element))

    def with_constants(self, constants: Dict[str, str]) -> "FiniteStructure":
        return FiniteStructure(
            universe=self.universe,
            membership=self.membership,
            constants={**self.constants, **constants},
            atoms=self.atoms,
        )

    def with_atoms(self, names: Iterable[str]) -> "FiniteStructure":
        fresh = [name for name in names if name not in self._members]
        return FiniteStructure(
            universe=self.universe + tuple(fresh),
            membership=self.membership,
            constants=dict(self.constants),
            atoms=self.atoms + tuple(fresh),
        )

    def to_json_dict(self) -> Dict[str, object]:
        payload: Dict[str, object] = {
            "universe": list(self.universe),
            "membership": [list(pair) for pair in self.membership],
            "constants": dict(self.constants),
        }
        if self.atoms:
            payload["atoms"] = list(self.atoms)
        return payload


def build_vn(n: int, *, max_rank: int = HARD_MAX_RANK) -> FiniteStructure:
    """
    V_n with Ackermann codes as element identifiers.

    Raises:
        ValueError: If ``n`` is negative
        FeasibilityError: If ``n`` exceeds ``max_rank`` (never more than 5)
    """
    if n < 0:
        raise ValueError("ranks are natural numbers")
    limit = min(max_rank, HARD_MAX_RANK)
    if n > limit:
        raise FeasibilityError(
            f"V_{n} is beyond the largest materialized rank {limit}",
            limit=limit,
            requested=n,
        )
    size = hf.tower(n)
    membership: List[Tuple[str, str]] = [
        (str(a), str(b)) for b in range(size) for a in hf.members(b)
    ]
    logger.debug(
        "Built V_n",
        extra={"extra_data": {"rank": n, "elements": size, "pairs": len(membership)}},
    )
    return FiniteStructure(
        universe=tuple(str(code) for code in range(size)),
        membership=tuple(membership),
    )


def vn_elements(m: int) -> List[str]:
    """Identifiers of the elements of V_m inside any larger V_n."""
    return [str(code) for code in range(hf.tower(m))]
