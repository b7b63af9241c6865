"""
stratkit

Decidable syntax of stratified set theory (parsing, stratification, reflection and
schema instances) together with finite set structures and a finite-category engine.
"""

from ._version import __version__, get_version, get_version_info

__all__ = ["__version__", "get_version", "get_version_info"]
