"""
Unit tests for relativization, schema instances and the TST transformations.
"""

import pytest
from pydantic import ValidationError

from src.logic.parser import parse
from src.logic.stratify import check_stratified
from src.logic.syntax import Dialect, NodeKind, TermKind, dialect_of, iter_terms
from src.logic.transform import (
    SchemaInstanceRequest,
    comprehension_instance,
    erase_types,
    foundation_instance,
    instantiate,
    raise_types,
    reflection_axiom,
    relativize,
    replacement_instance,
    sstar_axioms,
    supertransitivity_axioms,
    zfcs_translation,
)
from src.utils.exceptions import CaptureError, DialectError, NotStratifiedError, SchemaError

LSTAR = Dialect.LSTAR


class TestRelativize:
    """Test relativization of quantifiers."""

    def test_both_quantifiers(self):
        """Test the forall/implies and exists/and patterns."""
        ast = relativize(parse("forall x. exists y. x in y"), "S")
        assert ast == parse("forall x. (x in S -> exists y. (y in S & x in y))")

    def test_atoms_untouched(self):
        """Test that a quantifier-free formula is unchanged."""
        ast = parse("x in y & y = z")
        assert relativize(ast, "S") == ast

    def test_bound_restrictor(self):
        """Test that a restrictor bound in the formula is rejected."""
        with pytest.raises(CaptureError):
            relativize(parse("forall S. S in S"), "S")

    def test_vbar_restrictor(self):
        """Test relativizing an L* formula to Vbar."""
        ast = relativize(parse("forall x. x in X", LSTAR), "Vbar")
        assert any(t.kind is TermKind.VBAR for t in iter_terms(ast))

    def test_typed_input(self):
        """Test that TST formulas are rejected."""
        with pytest.raises(DialectError):
            relativize(parse("x^0 in y^1", Dialect.TST), "S")


class TestReflection:
    """Test reflection-schema instances."""

    def test_free_variables_bounded(self):
        """Test that free variables are quantified over the constant, in order."""
        ast = reflection_axiom(parse("x in y"))
        expected = parse("forall x. (x in S -> forall y. (y in S -> (x in y <-> x in y)))")
        assert ast == expected

    def test_sentence(self):
        """Test that a sentence gives a bare biconditional."""
        ast = reflection_axiom(parse("exists x. x = x"), "T")
        assert ast == parse("(exists x. (x in T & x = x)) <-> (exists x. x = x)")

    def test_constant_clash(self):
        """Test that a payload mentioning the constant is rejected."""
        with pytest.raises(CaptureError):
            reflection_axiom(parse("x in S"))

    def test_plain_only(self):
        """Test that reflection takes plain formulas."""
        with pytest.raises(DialectError):
            reflection_axiom(parse("x in X", LSTAR))


class TestComprehension:
    """Test comprehension instances."""

    def test_instance(self):
        """Test the exists Y forall X shape and its stratification."""
        ast = comprehension_instance(parse("X = X", LSTAR))
        assert ast == parse("exists Y. forall X. (X in Y <-> X = X)", LSTAR)
        assert check_stratified(ast, LSTAR).stratified

    def test_unstratified_payload(self):
        """Test that an unstratified payload is rejected."""
        with pytest.raises(NotStratifiedError):
            comprehension_instance(parse("X in X", LSTAR))

    def test_parameter_not_free(self):
        """Test that the designated variable must be free."""
        with pytest.raises(SchemaError) as exc_info:
            comprehension_instance(parse("Z = Z", LSTAR))
        assert exc_info.value.details["missing_parameters"] == ["X"]

    def test_fresh_class_name(self):
        """Test that Y is renamed when the payload uses it."""
        ast = comprehension_instance(parse("X in Y", LSTAR))
        assert ast.binder.name == "Y1"

    def test_universal_closure(self):
        """Test that remaining free variables get leading universal quantifiers."""
        ast = comprehension_instance(parse("X in Z", LSTAR), universal_closure=True)
        assert ast.kind is NodeKind.FORALL
        assert ast.binder.name == "Z"
        assert ast.body.kind is NodeKind.EXISTS


class TestReplacementAndFoundation:
    """Test the schemas that accept every L* formula."""

    def test_replacement_accepts_unstratified(self):
        """Test replacement on an unstratified payload."""
        ast = replacement_instance(parse("x in y & y in x", LSTAR))
        assert ast.kind is NodeKind.IMPLIES

    def test_replacement_fresh_names(self):
        """Test that the auxiliary variables avoid the payload's names."""
        ast = replacement_instance(parse("x in y & a = b", LSTAR))
        names = {t.name for t in iter_terms(ast) if t.name}
        assert {"a1", "b1", "y1", "y2"} <= names

    def test_replacement_parameters(self):
        """Test that both parameters must be free."""
        with pytest.raises(SchemaError):
            replacement_instance(parse("x = x", LSTAR))

    def test_foundation(self):
        """Test the minimal-element shape."""
        ast = foundation_instance(parse("x in x", LSTAR))
        expected = parse(
            "(exists x. x in x) -> exists x. (x in x & forall y. (y in x -> ~(y in y)))",
            LSTAR,
        )
        assert ast == expected

    def test_foundation_parameter(self):
        """Test that the designated variable must be free."""
        with pytest.raises(SchemaError):
            foundation_instance(parse("y = y", LSTAR))


class TestTypeShifts:
    """Test raise_types and erase_types."""

    def test_raise(self):
        """Test adding k to every index."""
        ast = parse("forall x^0. x^0 in y^1", Dialect.TST)
        assert raise_types(ast, 2) == parse("forall x^2. x^2 in y^3", Dialect.TST)

    def test_raise_is_additive(self):
        """Test that raising twice adds the shifts."""
        ast = parse("x^0 in y^1 & y^1 = z^1", Dialect.TST)
        assert raise_types(raise_types(ast, 1), 2) == raise_types(ast, 3)

    def test_negative_shift(self):
        """Test that types can only be raised."""
        with pytest.raises(ValueError):
            raise_types(parse("x^0 in y^1", Dialect.TST), -1)

    def test_erase(self):
        """Test dropping the indices."""
        assert erase_types(parse("x^0 in y^1", Dialect.TST)) == parse("x in y")

    def test_erase_keeps_variables_apart(self):
        """Test that one name at two types becomes two variables."""
        assert erase_types(parse("x^0 in x^1", Dialect.TST)) == parse("x in x1")

    def test_erase_needs_tst(self):
        """Test that erasing a plain formula is a dialect error."""
        with pytest.raises(DialectError):
            erase_types(parse("x in y"))


class TestAxioms:
    """Test the fixed axiom sets."""

    def test_sstar_axioms_are_stratified(self):
        """Test that every class-theory axiom is stratified."""
        axioms = sstar_axioms()
        assert {"pairing", "empty-set", "infinity"} <= set(axioms)
        assert dialect_of(axioms["pairing"]) is LSTAR
        for name, ast in axioms.items():
            assert check_stratified(ast, LSTAR).stratified, name

    def test_supertransitivity(self):
        """Test the two axioms about the constant."""
        transitive, supertransitive = supertransitivity_axioms("S")
        assert transitive == parse("forall x. forall y. (x in y & y in S -> x in S)")
        assert supertransitive.kind is NodeKind.FORALL

    def test_zfcs_translation(self):
        """Test replacing the constant by a rank variable."""
        ast = zfcs_translation(parse("forall x. (x in S -> x = x)"), "V_alpha")
        assert ast == parse("forall x. (x in V_alpha -> x = x)")


class TestInstantiate:
    """Test the request-driven dispatcher."""

    def test_comprehension_request(self):
        """Test that comprehension payloads are read as L*."""
        request = SchemaInstanceRequest(schema_tag="comprehension", formula="X = X")
        assert request.payload_dialect is LSTAR
        assert instantiate(request) == comprehension_instance(parse("X = X", LSTAR))

    def test_reflection_request(self):
        """Test that reflection payloads are read as plain formulas."""
        request = SchemaInstanceRequest(schema_tag="reflection", formula="x in y")
        assert instantiate(request) == reflection_axiom(parse("x in y"))

    def test_parameter_count(self):
        """Test that a wrong number of parameters is a validation error."""
        with pytest.raises(ValidationError):
            SchemaInstanceRequest(
                schema_tag="foundation", formula="x in x", parameters=["x", "y"]
            )

    def test_explicit_parameters(self):
        """Test designated parameters other than the defaults."""
        request = SchemaInstanceRequest(
            schema_tag="foundation", formula="z in z", parameters=["z"]
        )
        ast = instantiate(request)
        assert ast.children[0] == parse("exists z. z in z", LSTAR)
