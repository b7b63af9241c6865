"""
Unit tests for the parse, stratify and transform subcommands.
"""

from src.commands.parse import ParseCommand
from src.commands.stratify import RANDOM_SOURCE, StratifyCommand
from src.commands.transform import TransformCommand
from src.logic.parser import parse
from src.logic.syntax import Dialect
from src.logic.transform import comprehension_instance

UNIVERSAL_SET = "exists y. forall x. (x in y <-> x = x)"


class TestParseCommand:
    """Test the parse subcommand."""

    def test_formulas(self, make_command, write_text):
        """Test one record per formula with its free variables."""
        path = write_text("f.txt", "x in y\n# comment\nforall x. x = z\n")
        records = make_command(ParseCommand).process(str(path))
        assert [r.verdict["formula"] for r in records] == ["x in y", "forall x. x = z"]
        assert records[1].verdict["free"] == ["z"]
        assert records[0].verdict["dialect"] == "plain"

    def test_syntax_error(self, make_command, write_text):
        """Test that a bad line gives an error record and the others still parse."""
        path = write_text("f.txt", "x in\ny in z\n")
        records = make_command(ParseCommand).process(str(path))
        assert records[0].error["code"] == "SYNTAX_ERROR"
        assert records[0].error["exit_code"] == 3
        assert records[1].verdict["verdict"] == "ok"

    def test_dialect_option(self, make_command, write_text):
        """Test parsing in L*."""
        path = write_text("f.txt", "P(X, Y) in Vbar\n")
        record = make_command(ParseCommand, {"dialect": "lstar"}).process(str(path))[0]
        assert record.verdict["dialect"] == "lstar"


class TestStratifyCommand:
    """Test the stratify subcommand."""

    def test_verdicts(self, make_command, write_text):
        """Test the canonical verdicts."""
        path = write_text("f.txt", f"{UNIVERSAL_SET}\nx in x\n")
        records = make_command(StratifyCommand).process(str(path))
        assert records[0].verdict["verdict"] == "stratified"
        assert records[0].verdict["assignment"] == {"y": 1, "x": 0}
        assert records[1].verdict["verdict"] == "unstratified"
        assert records[1].verdict["cycle_sum"] == 1

    def test_oracle(self, make_command, write_text):
        """Test the oracle cross-check field."""
        path = write_text("f.txt", "x in y & y in z\n")
        record = make_command(StratifyCommand, oracle=True).process(str(path))[0]
        assert record.verdict["oracle"] == "agree"
        assert not record.failed

    def test_random_corpus(self, make_command):
        """Test that a seeded random corpus is reproducible."""
        first = make_command(StratifyCommand, {"seed": 3}, random=5).process(RANDOM_SOURCE)
        second = make_command(StratifyCommand, {"seed": 3}, random=5).process(RANDOM_SOURCE)
        assert [r.input for r in first] == [f"random:{i}" for i in range(5)]
        assert [r.verdict for r in first] == [r.verdict for r in second]

    def test_merged_set_variables(self, make_command, write_text):
        """Test that --merge-set-vars changes the L* verdict."""
        path = write_text("f.txt", "x in y & y in x\n")
        lstar = {"dialect": "lstar"}
        split = make_command(StratifyCommand, lstar).process(str(path))[0]
        merged = make_command(StratifyCommand, {**lstar, "merge_set_vars": True}).process(
            str(path)
        )[0]
        assert split.verdict["verdict"] == "stratified"
        assert merged.verdict["verdict"] == "unstratified"


class TestTransformCommand:
    """Test the transform subcommand."""

    def test_relativize(self, make_command, write_text):
        """Test relativizing to a named restrictor."""
        path = write_text("f.txt", "forall x. x = x\n")
        command = make_command(TransformCommand, verb="relativize", restrictor="T")
        record = command.process(str(path))[0]
        assert record.verdict["result"] == "forall x. (x in T -> x = x)"

    def test_comprehend(self, make_command, write_text):
        """Test that schema payloads default to L*."""
        path = write_text("f.txt", "X = X\n")
        record = make_command(TransformCommand, verb="comprehend").process(str(path))[0]
        expected = comprehension_instance(parse("X = X", Dialect.LSTAR))
        assert parse(record.verdict["result"], Dialect.LSTAR) == expected
        assert record.verdict["formula"] == "X = X"

    def test_comprehend_unstratified(self, make_command, write_text):
        """Test that an unstratified payload is an error record."""
        path = write_text("f.txt", "X in X\n")
        record = make_command(TransformCommand, verb="comprehend").process(str(path))[0]
        assert record.error["code"] == "NOT_STRATIFIED"

    def test_parameter_count(self, make_command, write_text):
        """Test that a wrong number of parameters is malformed input."""
        path = write_text("f.txt", "x in x\n")
        command = make_command(TransformCommand, verb="found", parameters=["x", "y"])
        assert command.process(str(path))[0].error["exit_code"] == 3

    def test_raise_and_erase(self, make_command, write_text):
        """Test that TST verbs read typed formulas."""
        path = write_text("f.txt", "x^0 in y^1\n")
        raised = make_command(TransformCommand, verb="raise", k=2).process(str(path))[0]
        assert parse(raised.verdict["result"], Dialect.TST) == parse("x^2 in y^3", Dialect.TST)
        erased = make_command(TransformCommand, verb="erase").process(str(path))[0]
        assert erased.verdict["result"] == "x in y"

    def test_type(self, make_command, write_text):
        """Test typing a stratified plain formula."""
        path = write_text("f.txt", f"{UNIVERSAL_SET}\n")
        record = make_command(TransformCommand, verb="type").process(str(path))[0]
        expected = parse("exists y^1. forall x^0. (x^0 in y^1 <-> x^0 = x^0)", Dialect.TST)
        assert parse(record.verdict["result"], Dialect.TST) == expected

    def test_translate(self, make_command, write_text):
        """Test replacing the constant by a rank variable."""
        path = write_text("f.txt", "forall x. (x in S -> x = x)\n")
        command = make_command(TransformCommand, verb="translate", level_name="V_beta")
        record = command.process(str(path))[0]
        assert record.verdict["result"] == "forall x. (x in V_beta -> x = x)"

    def test_standalone_verbs(self, make_command):
        """Test the axiom lists that take no input file."""
        sstar = make_command(TransformCommand, verb="sstar").process("sstar")
        assert len(sstar) == 9
        assert sstar[0].input == "sstar:pairing"
        command = make_command(TransformCommand, verb="supertransitivity", constant="T")
        records = command.process("supertransitivity")
        assert [r.input for r in records] == [
            "supertransitivity:transitive",
            "supertransitivity:supertransitive",
        ]
        assert "T" in records[0].verdict["result"]
