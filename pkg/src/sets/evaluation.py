"""
Tarskian evaluation of plain formulas in finite structures.
"""

from typing import Dict, Mapping, Optional

from src.logic.syntax import Dialect, Formula, NodeKind, Term, dialect_of
from src.sets.structure import FiniteStructure
from src.utils.exceptions import DialectError, EvaluationError

Valuation = Mapping[str, str]


def _denotation(term: Term, structure: FiniteStructure, env: Dict[str, str]) -> str:
    key = term.key
    if key in env:
        return env[key]
    if key in structure.constants:
        return structure.constants[key]
    raise EvaluationError(f"'{key}' is neither assigned nor a constant", name=key)


def _holds(ast: Formula, structure: FiniteStructure, env: Dict[str, str]) -> bool:
    kind = ast.kind
    if kind is NodeKind.MEMBER:
        left, right = (_denotation(t, structure, env) for t in ast.terms)
        return structure.is_member(left, right)
    if kind is NodeKind.EQUAL:
        left, right = (_denotation(t, structure, env) for t in ast.terms)
        return left == right
    if kind is NodeKind.NOT:
        return not _holds(ast.children[0], structure, env)
    if kind is NodeKind.AND:
        return _holds(ast.children[0], structure, env) and _holds(
            ast.children[1], structure, env
        )
    if kind is NodeKind.OR:
        return _holds(ast.children[0], structure, env) or _holds(
            ast.children[1], structure, env
        )
    if kind is NodeKind.IMPLIES:
        return (not _holds(ast.children[0], structure, env)) or _holds(
            ast.children[1], structure, env
        )
    if kind is NodeKind.IFF:
        return _holds(ast.children[0], structure, env) == _holds(
            ast.children[1], structure, env
        )

    assert ast.binder is not None
    key = ast.binder.key
    saved = env.get(key)
    want = kind is NodeKind.EXISTS
    try:
        for element in structure.universe:
            env[key] = element
            if _holds(ast.body, structure, env) == want:
                return want
        return not want
    finally:
        if saved is None:
            env.pop(key, None)
        else:
            env[key] = saved


def eval_formula(
    phi: Formula, structure: FiniteStructure, valuation: Optional[Valuation] = None
) -> bool:
    """
    Decide whether a structure satisfies a plain formula under a valuation.

    Variables are looked up in the valuation first and in the structure's
    constants second; quantifiers range over the whole universe, atoms included.

    Raises:
        DialectError: If ``phi`` is not a plain formula
        EvaluationError: If a variable is neither assigned nor a constant
    """
    if dialect_of(phi) is not Dialect.PLAIN:
        raise DialectError(
            "only plain formulas can be evaluated",
            expected=Dialect.PLAIN.value,
            found=dialect_of(phi).value,
        )
    env = dict(valuation or {})
    for name, element in env.items():
        if element not in structure:
            raise EvaluationError(
                f"'{name}' is assigned {element}, which is not in the universe", name=name
            )
    return _holds(phi, structure, env)
