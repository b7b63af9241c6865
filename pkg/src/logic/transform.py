"""
Syntactic transformations and schema instantiators.
"""

from typing import Dict, List, Literal, Optional, Sequence, Union

from pydantic import BaseModel, Field, model_validator

from src.logic.parser import parse
from src.logic.stratify import check_stratified
from src.logic.syntax import (
    VBAR_NAME,
    Dialect,
    Formula,
    NodeKind,
    Term,
    TermKind,
    all_names,
    bounded_exists,
    bounded_forall,
    check_dialect,
    class_var,
    conj,
    dialect_of,
    disj,
    equal,
    exists,
    forall,
    forall_all,
    free_variables,
    free_variables_ordered,
    fresh_name,
    iff,
    implies,
    iter_terms,
    member,
    neg,
    pair,
    rename_free,
    substitute_constant,
    var,
    vbar,
)
from src.utils.exceptions import CaptureError, DialectError, NotStratifiedError, SchemaError
from src.utils.logging import get_logger

logger = get_logger(__name__)

SCHEMA_TAGS = ("reflection", "comprehension", "replacement", "foundation")


def _restrictor_term(restrictor: Union[str, Term], dialect: Dialect) -> Term:
    if isinstance(restrictor, Term):
        return restrictor
    if restrictor == VBAR_NAME:
        return vbar()
    return var(restrictor, dialect=Dialect.LSTAR if dialect is Dialect.LSTAR else Dialect.PLAIN)


def _untyped(ast: Formula, operation: str) -> Dialect:
    dialect = dialect_of(ast)
    if dialect is Dialect.TST:
        raise DialectError(
            f"{operation} works on untyped formulas",
            expected="plain or lstar",
            found=dialect.value,
        )
    return dialect


def relativize(ast: Formula, restrictor: Union[str, Term] = "S") -> Formula:
    """
    Restrict every quantifier of a formula to ``restrictor``.

    ``forall x. p`` becomes ``forall x. (x in R -> p)`` and ``exists x. p`` becomes
    ``exists x. (x in R & p)``; atoms and free variables are left alone.

    Raises:
        CaptureError: If some binder of the formula binds the restrictor
    """
    dialect = _untyped(ast, "relativization")
    bound_term = _restrictor_term(restrictor, dialect)
    if bound_term.is_variable:
        binders = {t.key for t in _binders(ast)}
        if bound_term.key in binders:
            raise CaptureError(
                f"restrictor '{bound_term}' is bound in the formula",
                variable=bound_term.key,
            )

    def walk(node: Formula) -> Formula:
        if node.is_atom:
            return node
        children = tuple(walk(child) for child in node.children)
        if node.binder is None:
            return Formula(node.kind, children=children)
        body = children[0]
        if node.kind is NodeKind.FORALL:
            return bounded_forall(node.binder, bound_term, body)
        return bounded_exists(node.binder, bound_term, body)

    return walk(ast)


def _binders(ast: Formula) -> List[Term]:
    found: List[Term] = []
    if ast.binder is not None:
        found.append(ast.binder)
    for child in ast.children:
        found.extend(_binders(child))
    return found


def reflection_axiom(phi: Formula, constant: str = "S") -> Formula:
    """
    The reflection-schema instance for ``phi``.

    Every free variable of ``phi`` is quantified over the constant, in order of
    first occurrence, in front of the biconditional between the relativized and the
    original formula.

    Raises:
        DialectError: If ``phi`` is not a plain formula
        CaptureError: If ``phi`` already mentions the constant
    """
    if dialect_of(phi) is not Dialect.PLAIN:
        raise DialectError(
            "reflection instances are built from plain formulas",
            expected=Dialect.PLAIN.value,
            found=dialect_of(phi).value,
        )
    if constant in all_names(phi):
        raise CaptureError(
            f"formula already mentions the constant '{constant}'", variable=constant
        )
    restrictor = var(constant)
    result = iff(relativize(phi, restrictor), phi)
    for name in reversed(free_variables_ordered(phi)):
        result = bounded_forall(var(name), restrictor, result)
    return result


def supertransitivity_axioms(constant: str = "S") -> List[Formula]:
    """Transitivity and supertransitivity of the constant, subset expanded."""
    s, x, y, z = var(constant), var("x"), var("y"), var("z")
    transitive = forall_all(
        [x, y], implies(conj(member(x, y), member(y, s)), member(x, s))
    )
    subset = forall(z, implies(member(z, x), member(z, y)))
    supertransitive = forall_all([x, y], implies(conj(subset, member(y, s)), member(x, s)))
    return [transitive, supertransitive]


def zfcs_translation(
    theorem: Formula, level_name: str = "V_alpha", constant: str = "S"
) -> Formula:
    """Replace the constant of a ZFC/S sentence by a variable naming a rank."""
    return substitute_constant(theorem, constant, var(level_name))


def _require_free(phi: Formula, schema: str, names: Sequence[str]) -> None:
    free = free_variables(phi)
    missing = [name for name in names if name not in free]
    if missing:
        raise SchemaError(
            f"{schema} parameters not free in the formula: {', '.join(missing)}",
            schema=schema,
            missing=missing,
        )


def _as_lstar(phi: Formula) -> Formula:
    return check_dialect(phi, Dialect.LSTAR)


def comprehension_instance(
    phi: Formula,
    x: str = "X",
    y: str = "Y",
    *,
    universal_closure: bool = False,
    merge_set_vars: bool = False,
) -> Formula:
    """
    exists Y. forall X. (X in Y <-> phi)

    ``Y`` is replaced by the first fresh variant (Y1, Y2, ...) if ``phi`` already uses
    it. With ``universal_closure`` the remaining free variables are bound by leading
    universal quantifiers.

    Raises:
        SchemaError: If ``x`` is not free in ``phi``
        NotStratifiedError: If ``phi`` is not stratified
    """
    _as_lstar(phi)
    _require_free(phi, "comprehension", [x])
    verdict = check_stratified(phi, Dialect.LSTAR, merge_set_vars=merge_set_vars)
    if not verdict.stratified:
        raise NotStratifiedError(
            "comprehension needs a stratified formula",
            cycle=verdict.to_dict().get("cycle"),  # type: ignore[arg-type]
        )
    y_name = fresh_name(y, all_names(phi) | {x})
    x_term = var(x, dialect=Dialect.LSTAR)
    y_term = var(y_name, dialect=Dialect.LSTAR)
    result = exists(y_term, forall(x_term, iff(member(x_term, y_term), phi)))
    if universal_closure:
        params = [name for name in free_variables_ordered(phi) if name != x]
        result = forall_all([var(name, dialect=Dialect.LSTAR) for name in params], result)
    return result


def replacement_instance(phi: Formula, x: str = "x", y: str = "y") -> Formula:
    """
    (forall x. forall y1. forall y2. ((phi(x, y1) & phi(x, y2)) -> y1 = y2))
        -> forall a. exists b. forall y. (y in b <-> exists x. (x in a & phi(x, y)))

    Raises:
        SchemaError: If ``x`` or ``y`` is not free in ``phi``
    """
    _as_lstar(phi)
    _require_free(phi, "replacement", [x, y])
    taken = all_names(phi) | {x, y}
    names: Dict[str, str] = {}
    for base in ("y1", "y2", "a", "b"):
        names[base] = fresh_name(base, taken)
        taken.add(names[base])

    xv, yv = var(x, dialect=Dialect.LSTAR), var(y, dialect=Dialect.LSTAR)
    y1, y2, a, b = (var(names[base], dialect=Dialect.LSTAR) for base in ("y1", "y2", "a", "b"))
    functional = forall_all(
        [xv, y1, y2],
        implies(conj(rename_free(phi, y, y1), rename_free(phi, y, y2)), equal(y1, y2)),
    )
    image = forall(
        a,
        exists(b, forall(yv, iff(member(yv, b), bounded_exists(xv, a, phi)))),
    )
    return implies(functional, image)


def foundation_instance(phi: Formula, x: str = "x") -> Formula:
    """
    (exists x. phi(x)) -> exists x. (phi(x) & forall y. (y in x -> ~phi(y)))

    Raises:
        SchemaError: If ``x`` is not free in ``phi``
    """
    _as_lstar(phi)
    _require_free(phi, "foundation", [x])
    xv = var(x, dialect=Dialect.LSTAR)
    yv = var(fresh_name("y", all_names(phi) | {x}), dialect=Dialect.LSTAR)
    minimal = conj(phi, bounded_forall(yv, xv, neg(rename_free(phi, x, yv))))
    return implies(exists(xv, phi), exists(xv, minimal))


def _check_tst(ast: Formula) -> Formula:
    return check_dialect(ast, Dialect.TST)


def raise_types(ast: Formula, k: int = 1) -> Formula:
    """
    Add ``k`` to every type index of a TST formula.

    Raises:
        ValueError: If ``k`` is negative
        DialectError: If ``ast`` is not well-formed TST
    """
    if k < 0:
        raise ValueError("type indices can only be raised")
    _check_tst(ast)

    def lift(term: Term) -> Term:
        assert term.level is not None
        return Term(TermKind.SET_VAR, name=term.name, level=term.level + k)

    def walk(node: Formula) -> Formula:
        return Formula(
            node.kind,
            children=tuple(walk(child) for child in node.children),
            terms=tuple(lift(term) for term in node.terms),
            binder=lift(node.binder) if node.binder is not None else None,
        )

    return walk(ast)


def erase_types(ast: Formula) -> Formula:
    """
    Forget the type indices of a TST formula.

    TST variables are identified by name and index, so ``x^0`` and ``x^1`` are
    different variables; when one name carries several indices, only the first
    (free ones first) keeps the bare name and the others get fresh names.
    """
    _check_tst(ast)
    order: Dict[str, Term] = {}
    for term in iter_terms(ast):
        order.setdefault(term.key, term)
    free = free_variables(ast)
    used = all_names(ast)
    chosen: Dict[str, str] = {}
    claimed: set = set()
    for key in [k for k in order if k in free] + [k for k in order if k not in free]:
        name = str(order[key].name)
        if name in claimed:
            name = fresh_name(name, used | claimed)
        chosen[key] = name
        claimed.add(name)

    def plain(term: Term) -> Term:
        return var(chosen[term.key])

    def walk(node: Formula) -> Formula:
        return Formula(
            node.kind,
            children=tuple(walk(child) for child in node.children),
            terms=tuple(plain(term) for term in node.terms),
            binder=plain(node.binder) if node.binder is not None else None,
        )

    return walk(ast)


def sstar_axioms() -> Dict[str, Formula]:
    """
    The fixed axioms of the two-sorted class theory that fit the primitive language.

    Unique existence and the defined set operations are expanded into membership
    and equality.
    """
    x, y, z, w, u, v, a = (var(n) for n in ("x", "y", "z", "w", "u", "v", "a"))
    X, X1, X2, Y1, Y2 = (class_var(n) for n in ("X", "X1", "X2", "Y1", "Y2"))
    bar = vbar()

    def empty(t: Term) -> Formula:
        return forall(y, neg(member(y, t)))

    def collects(t: Term, body: Formula) -> Formula:
        # forall v. (v in t <-> body)
        return forall(v, iff(member(v, t), body))

    return {
        "pairing": forall_all(
            [X1, X2, Y1, Y2],
            implies(
                equal(pair(X1, X2), pair(Y1, Y2)),
                conj(equal(X1, Y1), equal(X2, Y2)),
            ),
        ),
        "sets-and-classes-a": forall(x, exists(X, equal(x, X))),
        "sets-and-classes-b": forall(X, iff(member(X, bar), exists(x, equal(x, X)))),
        "sets-and-classes-c": forall_all([X, x], implies(member(X, x), member(X, bar))),
        "empty-set": exists(
            z, conj(empty(z), forall(w, implies(empty(w), equal(w, z))))
        ),
        "unordered-pair": forall_all(
            [x, y],
            exists(w, conj(member(w, bar), collects(w, disj(equal(v, x), equal(v, y))))),
        ),
        "union": forall(
            x,
            exists(w, conj(member(w, bar), collects(w, bounded_exists(u, x, member(v, u))))),
        ),
        "power-set": forall(
            x,
            exists(
                w,
                conj(member(w, bar), collects(w, bounded_forall(u, v, member(u, x)))),
            ),
        ),
        "infinity": exists(
            a,
            conj(
                bounded_exists(z, a, empty(z)),
                bounded_forall(
                    x,
                    a,
                    bounded_exists(u, a, collects(u, disj(member(v, x), equal(v, x)))),
                ),
            ),
        ),
    }


class SchemaInstanceRequest(BaseModel):
    """A request for one schema instance, as read from the command line or JSON."""

    schema_tag: Literal["reflection", "comprehension", "replacement", "foundation"] = Field(
        description="Which schema to instantiate"
    )
    formula: str = Field(description="Payload formula in the concrete grammar")
    parameters: List[str] = Field(
        default_factory=list,
        description="Designated variables; schema defaults apply when empty",
    )
    constant: str = Field(default="S", description="Constant of the reflection schema")
    universal_closure: bool = False
    dialect: Optional[Dialect] = None

    @model_validator(mode="after")
    def validate_parameters(self) -> "SchemaInstanceRequest":
        expected = {"reflection": 0, "comprehension": 1, "replacement": 2, "foundation": 1}
        arity = expected[self.schema_tag]
        if self.parameters and len(self.parameters) != arity:
            raise ValueError(
                f"{self.schema_tag} takes {arity} designated parameter(s), "
                f"got {len(self.parameters)}"
            )
        return self

    @property
    def payload_dialect(self) -> Dialect:
        if self.dialect is not None:
            return self.dialect
        return Dialect.PLAIN if self.schema_tag == "reflection" else Dialect.LSTAR


def instantiate(request: SchemaInstanceRequest, *, merge_set_vars: bool = False) -> Formula:
    """Build the schema instance a request describes."""
    phi = parse(request.formula, request.payload_dialect)
    params = request.parameters
    logger.debug(
        "Instantiating schema",
        extra={"extra_data": {"schema": request.schema_tag, "parameters": params}},
    )
    if request.schema_tag == "reflection":
        return reflection_axiom(phi, request.constant)
    if request.schema_tag == "comprehension":
        return comprehension_instance(
            phi,
            *(params or ["X"]),
            universal_closure=request.universal_closure,
            merge_set_vars=merge_set_vars,
        )
    if request.schema_tag == "replacement":
        return replacement_instance(phi, *(params or ["x", "y"]))
    return foundation_instance(phi, *(params or ["x"]))
