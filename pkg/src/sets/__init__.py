"""
Finite set structures: hereditarily finite ranks, evaluation and reflection.
"""

from src.sets.evaluation import eval_formula
from src.sets.structure import FiniteStructure, build_vn

__all__ = ["FiniteStructure", "build_vn", "eval_formula"]
