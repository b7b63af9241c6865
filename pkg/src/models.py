"""
Pydantic models for input files and report records.

This module contains the JSON wire formats read by the ``model`` and ``cat``
subcommands and the per-input records written to the report stream.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.categories.category import FinCategory, MorphismSpec
from src.categories.functor import Functor
from src.categories.yoneda import SetFunctor
from src.sets.structure import FiniteStructure

# ===========================
# Input Models
# ===========================

FiniteStructureModel = FiniteStructure
FinCategoryModel = FinCategory

CategoryRef = Union[str, FinCategory]


def load_category(ref: CategoryRef, base: Optional[Path] = None) -> FinCategory:
    """Resolve an inline category or a path relative to ``base``."""
    if isinstance(ref, FinCategory):
        return ref
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return FinCategory.model_validate_json(path.read_text(encoding="utf-8"))


class FunctorSpec(BaseModel):
    """A functor whose categories are inline or stored in separate files."""

    source: CategoryRef = Field(..., description="Index category or its file")
    target: CategoryRef = Field(..., description="Target category or its file")
    object_map: Dict[str, str]
    morphism_map: Dict[str, str]

    def resolve(self, base: Optional[Path] = None) -> Functor:
        return Functor(
            source=load_category(self.source, base),
            target=load_category(self.target, base),
            object_map=self.object_map,
            morphism_map=self.morphism_map,
        )


class SetFunctorSpec(BaseModel):
    """A set-valued functor together with the object the Yoneda check runs at."""

    category: CategoryRef
    sets: Dict[str, List[str]]
    maps: Dict[str, Dict[str, str]]
    at: Optional[str] = Field(None, description="Object A of C(A, -); default: first object")

    def resolve(self, base: Optional[Path] = None) -> SetFunctor:
        return SetFunctor(
            category=load_category(self.category, base),
            sets={obj: tuple(elements) for obj, elements in self.sets.items()},
            maps=self.maps,
        )


class RelDiagramSpec(BaseModel):
    """A discrete diagram into Rel(U) or Set(U): one subset of the carrier per tag."""

    carrier: List[str] = Field(..., description="The finite carrier U")
    diagram: Dict[str, List[str]] = Field(..., description="Tag i to F({i})")

    @field_validator("carrier")
    @classmethod
    def validate_carrier(cls, v: List[str]) -> List[str]:
        if len(set(v)) != len(v):
            raise ValueError("carrier lists an element twice")
        return v

    @model_validator(mode="after")
    def validate_diagram(self) -> "RelDiagramSpec":
        carrier = set(self.carrier)
        for tag, elements in self.diagram.items():
            if not set(elements) <= carrier:
                raise ValueError(f"F({{{tag}}}) is not a subset of the carrier")
        return self

    def frozen(self) -> Dict[str, frozenset]:
        return {tag: frozenset(elements) for tag, elements in self.diagram.items()}


# ===========================
# Report Models
# ===========================


class RunOptions(BaseModel):
    """Per-run flags shared by every subcommand."""

    model_config = ConfigDict(frozen=True)

    dialect: str = "plain"
    pretty: bool = False
    jobs: int = Field(1, ge=1)
    seed: int = 0
    multi: bool = False
    max_morphisms: Optional[int] = Field(None, ge=1)
    merge_set_vars: bool = False


class RunRecord(BaseModel):
    """One line of the report stream."""

    input: str = Field(..., description="File name, or file:line for multi-formula files")
    subcommand: str
    verdict: Optional[Dict[str, Any]] = None
    error: Optional[Dict[str, Any]] = None
    elapsed_ms: float = Field(0.0, ge=0.0)

    @property
    def failed(self) -> bool:
        if self.error is not None:
            return True
        if self.verdict is None:
            return False
        return (
            self.verdict.get("verdict") == "theorem-violation"
            or self.verdict.get("oracle") == "disagree"
        )

    def to_json_line(self, *, pretty: bool = False) -> str:
        payload = self.model_dump(exclude_none=True)
        if pretty:
            return json.dumps(payload, indent=2, ensure_ascii=False)
        return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


__all__ = [
    "CategoryRef",
    "FinCategoryModel",
    "FiniteStructureModel",
    "FunctorSpec",
    "MorphismSpec",
    "RelDiagramSpec",
    "RunOptions",
    "RunRecord",
    "SetFunctorSpec",
    "load_category",
]
