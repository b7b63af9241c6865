"""
Concrete syntax for formulas.

The grammar is LALR(1). Every precedence level comes in an "open" flavour, which may
end in a quantifier, and a "closed" flavour, which may not; a quantifier body
extends as far right as possible, so a bare quantifier is only accepted as the last
operand of a connective.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Union

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from src.logic.syntax import (
    Dialect,
    Formula,
    NodeKind,
    Term,
    check_dialect,
    pair,
    var,
    vbar,
)
from src.utils.exceptions import DialectError, FormulaSyntaxError
from src.utils.logging import get_logger

logger = get_logger(__name__)

FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: iff_o

    ?iff_o: imp_o
          | imp_c "<->" imp_o              -> iff
    ?imp_o: disj_o
          | disj_c "->" imp_o              -> implies
    ?disj_o: conj_o
           | disj_c "|" conj_o             -> disj
    ?conj_o: unary_o
           | conj_c "&" unary_o            -> conj
    ?unary_o: unary_c
            | quant
            | "~" unary_q                  -> neg
    ?unary_q: quant
            | "~" unary_q                  -> neg

    quant: QUANTIFIER binder "." formula
    binder: NAME [level]

    ?imp_c: disj_c
          | disj_c "->" imp_c              -> implies
    ?disj_c: conj_c
           | disj_c "|" conj_c             -> disj
    ?conj_c: unary_c
           | conj_c "&" unary_c            -> conj
    ?unary_c: member
            | equal
            | "(" formula ")"
            | "~" unary_c                  -> neg

    member: term _IN [level] term
    equal: term "=" [level] term

    term: _VBAR                           -> vbar_term
         | _PAIR "(" term "," term ")"     -> pair_term
         | NAME [level]                    -> var_term
    level: "^" INT

    QUANTIFIER: /(forall|exists)\b/
    _IN: /in\b/
    _VBAR: /Vbar\b/
    _PAIR: /P(?=\s*\()/
    NAME: /(?!(?:forall|exists|in|Vbar)\b)(?!P\s*\()[A-Za-z_][A-Za-z0-9_]*/

    COMMENT: /#[^\n]*/

    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    """Build (once) the LALR parser for the formula grammar."""
    return Lark(FORMULA_GRAMMAR, parser="lalr", maybe_placeholders=True)


class _AstBuilder(Transformer):
    """Turn a parse tree into Formula/Term values for one dialect."""

    def __init__(self, dialect: Dialect):
        super().__init__()
        self.dialect = dialect

    def level(self, children: List[Token]) -> int:
        return int(children[0])

    def vbar_term(self, children: List[object]) -> Term:
        return vbar()

    def pair_term(self, children: List[Term]) -> Term:
        return pair(children[0], children[1])

    def var_term(self, children: List[object]) -> Term:
        name, level = children
        return var(str(name), level, dialect=self.dialect)  # type: ignore[arg-type]

    def binder(self, children: List[object]) -> Term:
        return self.var_term(children)

    def _atom(self, kind: NodeKind, children: List[object]) -> Formula:
        left, level, right = children
        assert isinstance(left, Term) and isinstance(right, Term)
        if level is not None:
            if self.dialect is not Dialect.TST:
                raise DialectError(
                    "indexed connectives are only available in TST",
                    expected=self.dialect.value,
                    found=Dialect.TST.value,
                )
            if left.level != level:
                raise DialectError(
                    f"connective index {level} does not match the type of "
                    f"'{left}'",
                    expected=self.dialect.value,
                    found=str(left),
                )
        return Formula(kind, terms=(left, right))

    def member(self, children: List[object]) -> Formula:
        return self._atom(NodeKind.MEMBER, children)

    def equal(self, children: List[object]) -> Formula:
        return self._atom(NodeKind.EQUAL, children)

    def neg(self, children: List[Formula]) -> Formula:
        return Formula(NodeKind.NOT, children=(children[0],))

    def conj(self, children: List[Formula]) -> Formula:
        return Formula(NodeKind.AND, children=tuple(children))

    def disj(self, children: List[Formula]) -> Formula:
        return Formula(NodeKind.OR, children=tuple(children))

    def implies(self, children: List[Formula]) -> Formula:
        return Formula(NodeKind.IMPLIES, children=tuple(children))

    def iff(self, children: List[Formula]) -> Formula:
        return Formula(NodeKind.IFF, children=tuple(children))

    def quant(self, children: List[object]) -> Formula:
        word, binder, body = children
        kind = NodeKind.FORALL if str(word) == "forall" else NodeKind.EXISTS
        return Formula(kind, children=(body,), binder=binder)  # type: ignore[arg-type]


def _syntax_error(exc: UnexpectedInput, text: str, first_line: int) -> FormulaSyntaxError:
    line, column = exc.line, exc.column
    if isinstance(exc, UnexpectedEOF) or line is None or line < 1:
        lines = text.split("\n")
        line, column = len(lines), len(lines[-1]) + 1
    line += first_line - 1
    snippet = exc.get_context(text).rstrip() if not isinstance(exc, UnexpectedEOF) else ""
    return FormulaSyntaxError(
        f"unexpected input at line {line}, column {column}",
        line=line,
        column=column,
        details={"context": snippet} if snippet else {},
    )


def parse(
    text: str, dialect: Union[Dialect, str] = Dialect.PLAIN, *, first_line: int = 1
) -> Formula:
    """
    Parse one formula.

    Args:
        text: Formula text
        dialect: plain, tst or lstar
        first_line: Line number of the first line of ``text`` in its file

    Returns:
        The formula AST

    Raises:
        FormulaSyntaxError: If the text does not match the grammar
        DialectError: If the formula is not well formed in ``dialect``
    """
    dialect = Dialect(dialect)
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as exc:
        raise _syntax_error(exc, text, first_line) from exc

    try:
        ast = _AstBuilder(dialect).transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, (DialectError, ValueError)):
            if isinstance(exc.orig_exc, ValueError):
                raise DialectError(str(exc.orig_exc), expected=dialect.value) from exc
            raise exc.orig_exc from exc
        raise
    return check_dialect(ast, dialect)


@dataclass(frozen=True)
class FormulaSource:
    """One formula's text as found in an input file."""

    line: int
    text: str


def iter_sources(text: str, *, multi: bool = False) -> Iterator[FormulaSource]:
    """
    Split an input file into formula sources.

    Without ``multi`` every non-blank line holds one formula; with it, formulas are
    separated by ``;`` and may span lines. ``#`` starts a comment in both modes.
    """
    if not multi:
        for number, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if body:
                yield FormulaSource(number, body)
        return

    cleaned = "\n".join(raw.split("#", 1)[0] for raw in text.splitlines())
    line = 1
    for block in cleaned.split(";"):
        stripped = block.strip()
        if stripped:
            leading = block[: len(block) - len(block.lstrip())]
            yield FormulaSource(line + leading.count("\n"), stripped)
        line += block.count("\n")


def parse_many(
    text: str, dialect: Union[Dialect, str] = Dialect.PLAIN, *, multi: bool = False
) -> List[Formula]:
    """Parse every formula of an input file; the first malformed one raises."""
    formulas = [
        parse(source.text, dialect, first_line=source.line)
        for source in iter_sources(text, multi=multi)
    ]
    logger.debug(
        "Parsed formula file",
        extra={"extra_data": {"formulas": len(formulas), "multi": multi}},
    )
    return formulas


def parse_term(text: str, dialect: Union[Dialect, str] = Dialect.PLAIN) -> Optional[Term]:
    """Parse a lone term by parsing ``t = t``; returns None for blank text."""
    if not text.strip():
        return None
    ast = parse(f"{text} = {text}", dialect)
    return ast.terms[0]
