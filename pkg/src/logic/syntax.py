"""
Abstract syntax for the three formula dialects.

Formulas and terms are frozen dataclasses, so they hash, compare structurally and
can be shared freely between threads and worker processes. Variables are named;
binder identity is recovered by scope (the innermost binder with the same key
captures an occurrence), so two binders with the same name are two variables.
"""

from dataclasses import dataclass
from enum import Enum
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from src.utils.exceptions import CaptureError, DialectError

VBAR_NAME = "Vbar"


class Dialect(str, Enum):
    """Formula languages understood by the toolkit."""

    PLAIN = "plain"
    TST = "tst"
    LSTAR = "lstar"


class NodeKind(str, Enum):
    MEMBER = "atom-membership"
    EQUAL = "atom-equality"
    NOT = "negation"
    AND = "conjunction"
    OR = "disjunction"
    IMPLIES = "implication"
    IFF = "biconditional"
    FORALL = "universal-quantifier"
    EXISTS = "existential-quantifier"


class TermKind(str, Enum):
    SET_VAR = "set-variable"
    CLASS_VAR = "class-variable"
    VBAR = "constant-Vbar"
    PAIR = "pair-application"


ATOMS = frozenset({NodeKind.MEMBER, NodeKind.EQUAL})
BINARY = frozenset({NodeKind.AND, NodeKind.OR, NodeKind.IMPLIES, NodeKind.IFF})
QUANTIFIERS = frozenset({NodeKind.FORALL, NodeKind.EXISTS})
VARIABLES = frozenset({TermKind.SET_VAR, TermKind.CLASS_VAR})

CONNECTIVE_SYMBOLS: Dict[NodeKind, str] = {
    NodeKind.AND: "&",
    NodeKind.OR: "|",
    NodeKind.IMPLIES: "->",
    NodeKind.IFF: "<->",
}
QUANTIFIER_WORDS: Dict[NodeKind, str] = {
    NodeKind.FORALL: "forall",
    NodeKind.EXISTS: "exists",
}


@dataclass(frozen=True)
class Term:
    """A term: a set or class variable, the constant Vbar, or P(s, t)."""

    kind: TermKind
    name: Optional[str] = None
    level: Optional[int] = None
    args: Tuple["Term", ...] = ()

    def __post_init__(self) -> None:
        if self.kind is TermKind.PAIR:
            if len(self.args) != 2 or self.name is not None:
                raise ValueError("P(s, t) takes exactly two argument terms")
        elif self.args:
            raise ValueError(f"{self.kind.value} is a leaf term")
        if self.kind in VARIABLES and not self.name:
            raise ValueError("variables need an identifier")
        if self.level is not None:
            if self.kind not in VARIABLES:
                raise ValueError("only variables carry a type index")
            if self.level < 0:
                raise ValueError("type indices are natural numbers")

    @property
    def is_variable(self) -> bool:
        return self.kind in VARIABLES

    @property
    def key(self) -> str:
        """Identity of a variable: its name, plus its type index in TST."""
        if not self.is_variable:
            return VBAR_NAME if self.kind is TermKind.VBAR else str(self)
        if self.level is None:
            return str(self.name)
        return f"{self.name}^{self.level}"

    def variables(self) -> Iterator["Term"]:
        """Yield the variable leaves of this term, left to right."""
        if self.is_variable:
            yield self
        for arg in self.args:
            yield from arg.variables()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Formula:
    """A formula node; the payload fields used depend on ``kind``."""

    kind: NodeKind
    children: Tuple["Formula", ...] = ()
    terms: Tuple[Term, ...] = ()
    binder: Optional[Term] = None

    def __post_init__(self) -> None:
        if self.kind in ATOMS:
            ok = len(self.terms) == 2 and not self.children and self.binder is None
        elif self.kind is NodeKind.NOT:
            ok = len(self.children) == 1 and not self.terms and self.binder is None
        elif self.kind in BINARY:
            ok = len(self.children) == 2 and not self.terms and self.binder is None
        else:
            ok = (
                len(self.children) == 1
                and not self.terms
                and self.binder is not None
                and self.binder.is_variable
            )
        if not ok:
            raise ValueError(f"malformed {self.kind.value} node")

    @property
    def is_atom(self) -> bool:
        return self.kind in ATOMS

    @property
    def is_binary(self) -> bool:
        return self.kind in BINARY

    @property
    def is_quantifier(self) -> bool:
        return self.kind in QUANTIFIERS

    @property
    def body(self) -> "Formula":
        return self.children[0]

    def __str__(self) -> str:
        return print_formula(self)


Operand = Union[Term, str]


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def sort_for(name: str, dialect: Dialect) -> TermKind:
    """Lowercase identifiers are set variables, uppercase ones class variables (L* only)."""
    if dialect is Dialect.LSTAR and name[:1].isupper():
        return TermKind.CLASS_VAR
    return TermKind.SET_VAR


def var(name: str, level: Optional[int] = None, *, dialect: Dialect = Dialect.PLAIN) -> Term:
    if name == VBAR_NAME:
        return vbar()
    return Term(sort_for(name, dialect), name=name, level=level)


def class_var(name: str) -> Term:
    return Term(TermKind.CLASS_VAR, name=name)


def vbar() -> Term:
    return Term(TermKind.VBAR)


def pair(left: Term, right: Term) -> Term:
    return Term(TermKind.PAIR, args=(left, right))


def _term(operand: Operand) -> Term:
    return operand if isinstance(operand, Term) else var(operand)


def member(left: Operand, right: Operand) -> Formula:
    return Formula(NodeKind.MEMBER, terms=(_term(left), _term(right)))


def equal(left: Operand, right: Operand) -> Formula:
    return Formula(NodeKind.EQUAL, terms=(_term(left), _term(right)))


def neg(body: Formula) -> Formula:
    return Formula(NodeKind.NOT, children=(body,))


def conj(left: Formula, right: Formula) -> Formula:
    return Formula(NodeKind.AND, children=(left, right))


def disj(left: Formula, right: Formula) -> Formula:
    return Formula(NodeKind.OR, children=(left, right))


def implies(left: Formula, right: Formula) -> Formula:
    return Formula(NodeKind.IMPLIES, children=(left, right))


def iff(left: Formula, right: Formula) -> Formula:
    return Formula(NodeKind.IFF, children=(left, right))


def forall(binder: Operand, body: Formula) -> Formula:
    return Formula(NodeKind.FORALL, children=(body,), binder=_term(binder))


def exists(binder: Operand, body: Formula) -> Formula:
    return Formula(NodeKind.EXISTS, children=(body,), binder=_term(binder))


def conj_all(parts: Sequence[Formula]) -> Formula:
    """Left-nested conjunction of one or more formulas."""
    if not parts:
        raise ValueError("conj_all needs at least one formula")
    result = parts[0]
    for part in parts[1:]:
        result = conj(result, part)
    return result


def forall_all(binders: Sequence[Operand], body: Formula) -> Formula:
    for binder in reversed(binders):
        body = forall(binder, body)
    return body


def bounded_forall(binder: Term, bound: Term, body: Formula) -> Formula:
    """forall x. (x in b -> body)"""
    return forall(binder, implies(member(binder, bound), body))


def bounded_exists(binder: Term, bound: Term, body: Formula) -> Formula:
    """exists x. (x in b & body)"""
    return exists(binder, conj(member(binder, bound), body))


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def print_term(term: Term) -> str:
    if term.kind is TermKind.VBAR:
        return VBAR_NAME
    if term.kind is TermKind.PAIR:
        left, right = term.args
        return f"P({print_term(left)}, {print_term(right)})"
    if term.level is None:
        return str(term.name)
    return f"{term.name}^{term.level}"


def _operand(child: Formula, parent: NodeKind, right: bool) -> str:
    text = print_formula(child)
    if child.is_atom or child.kind is NodeKind.NOT:
        return text
    # a quantifier extends as far right as possible, so it may stand bare
    # only in the last operand position
    if child.is_quantifier and right and parent is not NodeKind.IFF:
        return text
    return f"({text})"


def print_formula(ast: Formula) -> str:
    """Render a formula in the concrete grammar; parse(print_formula(a)) == a."""
    kind = ast.kind
    if ast.is_atom:
        left, right = ast.terms
        symbol = "in" if kind is NodeKind.MEMBER else "="
        if left.level is not None:
            symbol = f"{symbol}^{left.level}"
        return f"{print_term(left)} {symbol} {print_term(right)}"
    if kind is NodeKind.NOT:
        child = ast.children[0]
        if child.kind is NodeKind.NOT:
            return f"~{print_formula(child)}"
        return f"~({print_formula(child)})"
    if ast.is_binary:
        left, right = ast.children
        return (
            f"{_operand(left, kind, right=False)} {CONNECTIVE_SYMBOLS[kind]} "
            f"{_operand(right, kind, right=True)}"
        )
    body = ast.body
    body_text = print_formula(body)
    if body.is_binary:
        body_text = f"({body_text})"
    assert ast.binder is not None
    return f"{QUANTIFIER_WORDS[kind]} {print_term(ast.binder)}. {body_text}"


# ---------------------------------------------------------------------------
# Traversal helpers
# ---------------------------------------------------------------------------


def iter_atoms(ast: Formula) -> Iterator[Formula]:
    """Yield atomic subformulas left to right."""
    if ast.is_atom:
        yield ast
        return
    for child in ast.children:
        yield from iter_atoms(child)


def iter_terms(ast: Formula) -> Iterator[Term]:
    """Yield every term occurrence, binders included, left to right."""
    if ast.binder is not None:
        yield ast.binder
    for term in ast.terms:
        yield from _subterms(term)
    for child in ast.children:
        yield from iter_terms(child)


def _subterms(term: Term) -> Iterator[Term]:
    yield term
    for arg in term.args:
        yield from _subterms(arg)


def free_variables_ordered(ast: Formula) -> List[str]:
    """Free variable keys in order of first occurrence."""
    seen: Dict[str, None] = {}

    def walk(node: Formula, bound: FrozenSet[str]) -> None:
        if node.is_atom:
            for term in node.terms:
                for variable in term.variables():
                    if variable.key not in bound:
                        seen.setdefault(variable.key, None)
            return
        if node.binder is not None:
            bound = bound | {node.binder.key}
        for child in node.children:
            walk(child, bound)

    walk(ast, frozenset())
    return list(seen)


def free_variables(ast: Formula) -> FrozenSet[str]:
    """Keys of variables with at least one occurrence not captured by a binder."""
    return frozenset(free_variables_ordered(ast))


def all_names(ast: Formula) -> Set[str]:
    """Every identifier used in the formula, free or bound."""
    return {term.name for term in iter_terms(ast) if term.name is not None}


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Return base, or base1, base2, ... -- the first not in ``avoid``."""
    taken = set(avoid)
    if base not in taken:
        return base
    counter = 1
    while f"{base}{counter}" in taken:
        counter += 1
    return f"{base}{counter}"


def dialect_of(ast: Formula) -> Dialect:
    """The least dialect whose constructs cover the formula."""
    lstar = False
    for term in iter_terms(ast):
        if term.level is not None:
            return Dialect.TST
        if term.kind is not TermKind.SET_VAR:
            lstar = True
    return Dialect.LSTAR if lstar else Dialect.PLAIN


def check_dialect(ast: Formula, dialect: Dialect) -> Formula:
    """
    Verify that a formula is well formed in the given dialect.

    Raises:
        DialectError: If a construct or a TST typing rule is violated
    """
    for term in iter_terms(ast):
        if dialect is Dialect.TST:
            if term.kind is not TermKind.SET_VAR:
                raise DialectError(
                    f"'{print_term(term)}' is not allowed in TST",
                    expected=dialect.value,
                    found=term.kind.value,
                )
            if term.level is None:
                raise DialectError(
                    f"TST variable '{term.name}' needs a type index",
                    expected=dialect.value,
                    found=print_term(term),
                )
        else:
            if term.level is not None:
                raise DialectError(
                    f"type index on '{print_term(term)}' outside TST",
                    expected=dialect.value,
                    found=print_term(term),
                )
            if dialect is Dialect.PLAIN and term.kind is not TermKind.SET_VAR:
                raise DialectError(
                    f"'{print_term(term)}' is only available in the lstar dialect",
                    expected=dialect.value,
                    found=term.kind.value,
                )
            if dialect is Dialect.LSTAR and term.is_variable:
                expected_sort = sort_for(str(term.name), dialect)
                if term.kind is not expected_sort:
                    raise DialectError(
                        f"'{term.name}' must be a {expected_sort.value}",
                        expected=dialect.value,
                        found=term.kind.value,
                    )
    if dialect is Dialect.TST:
        for atom in iter_atoms(ast):
            left, right = atom.terms
            assert left.level is not None and right.level is not None
            step = 1 if atom.kind is NodeKind.MEMBER else 0
            if right.level != left.level + step:
                raise DialectError(
                    f"ill-typed TST atom '{print_formula(atom)}'",
                    expected=dialect.value,
                    found=print_formula(atom),
                )
    return ast


# ---------------------------------------------------------------------------
# Alpha-equivalence and substitution
# ---------------------------------------------------------------------------


def _terms_alpha(
    s: Term, t: Term, env_s: Dict[str, int], env_t: Dict[str, int]
) -> bool:
    if s.kind is not t.kind:
        return False
    if s.kind is TermKind.VBAR:
        return True
    if s.kind is TermKind.PAIR:
        return all(_terms_alpha(a, b, env_s, env_t) for a, b in zip(s.args, t.args))
    bound_s, bound_t = env_s.get(s.key), env_t.get(t.key)
    if bound_s is None and bound_t is None:
        return s.key == t.key
    return bound_s == bound_t


def _alpha(
    a: Formula, b: Formula, env_a: Dict[str, int], env_b: Dict[str, int], depth: int
) -> bool:
    if a.kind is not b.kind:
        return False
    if a.is_atom:
        return all(_terms_alpha(s, t, env_a, env_b) for s, t in zip(a.terms, b.terms))
    if a.is_quantifier:
        assert a.binder is not None and b.binder is not None
        if a.binder.kind is not b.binder.kind or a.binder.level != b.binder.level:
            return False
        env_a = {**env_a, a.binder.key: depth}
        env_b = {**env_b, b.binder.key: depth}
        return _alpha(a.body, b.body, env_a, env_b, depth + 1)
    return all(
        _alpha(x, y, env_a, env_b, depth) for x, y in zip(a.children, b.children)
    )


def alpha_equivalent(a: Formula, b: Formula) -> bool:
    """
    Decide equality up to consistent renaming of bound variables.

    Raises:
        DialectError: If one formula is typed (TST) and the other is not
    """
    typed_a = dialect_of(a) is Dialect.TST
    typed_b = dialect_of(b) is Dialect.TST
    if typed_a != typed_b:
        raise DialectError(
            "cannot compare a TST formula with an untyped one",
            expected=Dialect.TST.value if typed_a else "untyped",
            found=Dialect.TST.value if typed_b else "untyped",
        )
    return _alpha(a, b, {}, {}, 0)


def _replace_term(
    term: Term,
    matches: Callable[[Term], bool],
    replacement: Term,
    bound: FrozenSet[str],
    danger: FrozenSet[str],
) -> Term:
    if term.kind is TermKind.PAIR:
        left, right = term.args
        return pair(
            _replace_term(left, matches, replacement, bound, danger),
            _replace_term(right, matches, replacement, bound, danger),
        )
    if matches(term) and not (term.is_variable and term.key in bound):
        captured = danger & bound
        if captured:
            name = sorted(captured)[0]
            raise CaptureError(
                f"replacement '{print_term(replacement)}' would be captured by a "
                f"binder of '{name}'",
                variable=name,
            )
        return replacement
    return term


def _replace(
    ast: Formula,
    matches: Callable[[Term], bool],
    replacement: Term,
    bound: FrozenSet[str],
    danger: FrozenSet[str],
) -> Formula:
    if ast.is_atom:
        left, right = (
            _replace_term(term, matches, replacement, bound, danger)
            for term in ast.terms
        )
        return Formula(ast.kind, terms=(left, right))
    if ast.binder is not None:
        bound = bound | {ast.binder.key}
    children = tuple(
        _replace(child, matches, replacement, bound, danger) for child in ast.children
    )
    return Formula(ast.kind, children=children, binder=ast.binder)


def substitute_constant(
    ast: Formula, constant: str, replacement: Operand
) -> Formula:
    """
    Replace every free occurrence of a named constant.

    ``constant`` is either ``Vbar`` or the identifier of a free variable that plays
    the role of a constant (such as ``S``). Occurrences under a binder of the same
    name are bound, not occurrences of the constant, and stay untouched.

    Raises:
        CaptureError: If a variable of the replacement is bound at an occurrence
    """
    dialect = dialect_of(ast)
    if isinstance(replacement, str):
        replacement = var(
            replacement, dialect=Dialect.LSTAR if dialect is Dialect.LSTAR else Dialect.PLAIN
        )
    danger = frozenset(v.key for v in replacement.variables())

    if constant == VBAR_NAME:

        def matches(term: Term) -> bool:
            return term.kind is TermKind.VBAR

    else:

        def matches(term: Term) -> bool:
            return term.is_variable and term.key == constant

    return _replace(ast, matches, replacement, frozenset(), danger)


def rename_free(ast: Formula, old: str, new: Operand) -> Formula:
    """Capture-checked replacement of the free variable ``old``."""
    return substitute_constant(ast, old, new)
