"""
Formula syntax, stratification and syntactic transformations.
"""

from src.logic.parser import parse, parse_many
from src.logic.stratify import check_stratified, extract_constraints, solve
from src.logic.syntax import Dialect, Formula, Term, print_formula

__all__ = [
    "Dialect",
    "Formula",
    "Term",
    "check_stratified",
    "extract_constraints",
    "parse",
    "parse_many",
    "print_formula",
    "solve",
]
