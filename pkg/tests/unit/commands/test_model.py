"""
Unit tests for the model subcommand.
"""

from src.commands.model import ModelCommand

EMPTY_SET = "exists x. forall y. ~(y in x)"


class TestBuildVn:
    """Test model build-vn."""

    def test_rank_forms(self, make_command):
        """Test that both 3 and V3 name the rank."""
        command = make_command(ModelCommand, verb="build-vn")
        for source in ("3", "V3"):
            verdict = command.process(source)[0].verdict
            assert verdict["rank"] == 3
            assert verdict["size"] == 4
            assert verdict["structure"]["universe"] == ["0", "1", "2", "3"]

    def test_not_a_rank(self, make_command):
        """Test that other inputs are malformed."""
        record = make_command(ModelCommand, verb="build-vn").process("three")[0]
        assert record.error["code"] == "STRUCTURE_ERROR"
        assert record.error["exit_code"] == 3

    def test_rank_cap(self, make_command):
        """Test that ranks above MAX_VN_RANK are infeasible."""
        record = make_command(ModelCommand, verb="build-vn").process("V6")[0]
        assert record.error["exit_code"] == 4


class TestEval:
    """Test model eval."""

    def test_default_structure(self, make_command, write_text):
        """Test evaluation in V3."""
        path = write_text("f.txt", f"{EMPTY_SET}\nexists y. forall x. x in y\n")
        records = make_command(ModelCommand, verb="eval").process(str(path))
        assert [r.verdict["verdict"] for r in records] == ["true", "false"]

    def test_assignment(self, make_command, write_text):
        """Test free variables bound with --assign."""
        path = write_text("f.txt", "x in y\n")
        command = make_command(ModelCommand, verb="eval", structure="V2", assign=["x=0", "y=1"])
        assert command.process(str(path))[0].verdict["verdict"] == "true"

    def test_bad_assignment(self, make_command, write_text):
        """Test that an assignment needs an equals sign."""
        path = write_text("f.txt", "x in y\n")
        command = make_command(ModelCommand, verb="eval", assign=["x"])
        assert command.process(str(path))[0].error["code"] == "STRUCTURE_ERROR"

    def test_structure_file(self, make_command, write_json, write_text):
        """Test evaluation in a structure read from JSON."""
        structure = write_json(
            "s.json",
            {"universe": ["a", "b"], "membership": [["a", "a"]], "constants": {}},
        )
        path = write_text("f.txt", "exists x. x in x\n")
        command = make_command(ModelCommand, verb="eval", structure=str(structure))
        assert command.process(str(path))[0].verdict["verdict"] == "true"


class TestReflectSearch:
    """Test model reflect-search."""

    def test_empty_set(self, make_command, write_text):
        """Test the least reflecting rank of empty-set existence in V4."""
        path = write_text("f.txt", f"{EMPTY_SET}\n")
        verdict = make_command(ModelCommand, verb="reflect-search", rank=4).process(str(path))[
            0
        ].verdict
        assert verdict["rank"] == 1
        assert verdict["ambient_rank"] == 4

    def test_required(self, make_command, write_text):
        """Test that required codes push the rank up."""
        path = write_text("f.txt", f"{EMPTY_SET}\n")
        command = make_command(ModelCommand, verb="reflect-search", required=[3])
        assert command.process(str(path))[0].verdict["rank"] == 3


class TestCantor:
    """Test model cantor."""

    def test_v3(self, make_command):
        """Test that every element of V3 has its powerset available."""
        verdict = make_command(ModelCommand, verb="cantor").process("V3")[0].verdict
        rows = {row["element"]: row for row in verdict["elements"]}
        assert rows["3"]["describe"] == "{{}, {{}}}"
        assert (rows["3"]["singletons"], rows["3"]["subsets"]) == (2, 4)
        assert rows["3"]["smaller"]
        assert verdict["weak_extensionality"] and verdict["well_founded"]

    def test_selected_elements(self, make_command):
        """Test checking only the elements asked for."""
        command = make_command(ModelCommand, verb="cantor", elements=["15"])
        rows = command.process("V4")[0].verdict["elements"]
        assert [(r["element"], r["singletons"], r["subsets"]) for r in rows] == [("15", 4, 16)]

    def test_powerset_missing(self, make_command, write_json):
        """Test a structure without the needed singletons."""
        path = write_json(
            "s.json",
            {"universe": ["e", "f", "s"], "membership": [["e", "s"], ["f", "s"]]},
        )
        verdict = make_command(ModelCommand, verb="cantor", elements=["s"]).process(str(path))[
            0
        ].verdict
        row = verdict["elements"][0]
        assert row["status"] == "powerset-missing"
        assert not row["cantorian"]
        assert "describe" not in row
