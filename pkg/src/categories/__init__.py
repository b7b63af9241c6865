"""
Finite categories, functors, limits and the Rel/Set constructions.
"""

from src.categories.category import FinCategory, MorphismSpec, validate_category
from src.categories.functor import Functor, validate_functor
from src.categories.limits import Cone, cones_to, limits_to

__all__ = [
    "Cone",
    "FinCategory",
    "Functor",
    "MorphismSpec",
    "cones_to",
    "limits_to",
    "validate_category",
    "validate_functor",
]
