"""
Unit tests for the input and report models.
"""

import json

import pytest
from pydantic import ValidationError

from src.categories.builders import parallel_pair, total_order
from src.categories.category import FinCategory
from src.models import (
    FunctorSpec,
    RelDiagramSpec,
    RunOptions,
    RunRecord,
    SetFunctorSpec,
    load_category,
)


class TestLoadCategory:
    """Test resolving category references."""

    def test_inline(self):
        """Test that an inline category is returned as is."""
        category = parallel_pair()
        assert load_category(category) is category

    def test_relative_path(self, write_json, tmp_path):
        """Test that relative paths are read against the base directory."""
        write_json("pair.json", parallel_pair().to_json_dict())

        assert load_category("pair.json", tmp_path) == parallel_pair()

    def test_absolute_path(self, write_json):
        """Test that absolute paths ignore the base directory."""
        path = write_json("chain.json", total_order(["0", "1"]).to_json_dict())

        assert load_category(str(path), path.parent / "elsewhere") == total_order(["0", "1"])

    def test_missing_file(self, tmp_path):
        """Test that a missing file surfaces as an OSError."""
        with pytest.raises(OSError):
            load_category("absent.json", tmp_path)

    def test_unknown_morphism_in_table(self):
        """Test that dangling ids in the composition table are rejected."""
        payload = parallel_pair().to_json_dict()
        payload["compose"] = [["f", "nope", "f"]]

        with pytest.raises(ValidationError):
            FinCategory.model_validate(payload)


class TestFunctorSpec:
    """Test functors read from JSON."""

    def test_inline_categories(self):
        """Test resolving a functor with inline categories."""
        pair = parallel_pair().to_json_dict()
        spec = FunctorSpec.model_validate(
            {
                "source": pair,
                "target": pair,
                "object_map": {"A": "A", "B": "B"},
                "morphism_map": {"f": "g", "g": "f", "id_A": "id_A", "id_B": "id_B"},
            }
        )

        functor = spec.resolve()
        assert functor.source == parallel_pair()
        assert functor.on_object("A") == "A"

    def test_file_categories(self, write_json, tmp_path):
        """Test resolving a functor whose categories are files."""
        write_json("pair.json", parallel_pair().to_json_dict())
        spec = FunctorSpec(
            source="pair.json",
            target="pair.json",
            object_map={"A": "A", "B": "B"},
            morphism_map={},
        )

        assert spec.resolve(tmp_path).target == parallel_pair()


class TestSetFunctorSpec:
    """Test set-valued functors read from JSON."""

    def test_resolve(self):
        """Test that element lists become tuples."""
        spec = SetFunctorSpec.model_validate(
            {
                "category": parallel_pair().to_json_dict(),
                "sets": {"A": ["a"], "B": ["b0", "b1"]},
                "maps": {
                    "f": {"a": "b0"},
                    "g": {"a": "b1"},
                    "id_A": {"a": "a"},
                    "id_B": {"b0": "b0", "b1": "b1"},
                },
                "at": "A",
            }
        )

        functor = spec.resolve()
        assert functor.sets["B"] == ("b0", "b1")
        assert functor.apply("g", "a") == "b1"
        assert spec.at == "A"

    def test_default_object(self):
        """Test that the evaluation object is optional."""
        spec = SetFunctorSpec(category=parallel_pair(), sets={}, maps={})
        assert spec.at is None


class TestRelDiagramSpec:
    """Test discrete diagrams into Rel(U) and Set(U)."""

    def test_valid(self):
        """Test freezing a valid diagram."""
        spec = RelDiagramSpec(carrier=["0", "1"], diagram={"i": ["0"], "j": ["0", "1"]})

        assert spec.frozen() == {"i": frozenset({"0"}), "j": frozenset({"0", "1"})}

    def test_duplicate_carrier_element(self):
        """Test that the carrier is a set."""
        with pytest.raises(ValidationError) as exc_info:
            RelDiagramSpec(carrier=["0", "0"], diagram={})
        assert "twice" in str(exc_info.value)

    def test_value_outside_carrier(self):
        """Test that every F({i}) lies inside the carrier."""
        with pytest.raises(ValidationError) as exc_info:
            RelDiagramSpec(carrier=["0"], diagram={"i": ["0", "2"]})
        assert "F({i})" in str(exc_info.value)


class TestRunOptions:
    """Test the per-run flags."""

    def test_defaults(self):
        """Test default flags."""
        options = RunOptions()

        assert options.dialect == "plain"
        assert options.jobs == 1
        assert options.max_morphisms is None
        assert not options.pretty

    def test_frozen(self):
        """Test that options cannot be changed after creation."""
        options = RunOptions()
        with pytest.raises(ValidationError):
            options.jobs = 2

    @pytest.mark.parametrize("field", ["jobs", "max_morphisms"])
    def test_positive(self, field):
        """Test that counts must be positive."""
        with pytest.raises(ValidationError):
            RunOptions(**{field: 0})


class TestRunRecord:
    """Test report records."""

    def test_json_line_drops_empty_fields(self):
        """Test the compact one-line form."""
        record = RunRecord(
            input="f.txt:1", subcommand="stratify", verdict={"verdict": "stratified"}
        )

        line = record.to_json_line()
        assert "\n" not in line
        assert json.loads(line) == {
            "input": "f.txt:1",
            "subcommand": "stratify",
            "verdict": {"verdict": "stratified"},
            "elapsed_ms": 0.0,
        }

    def test_pretty(self):
        """Test the indented form."""
        record = RunRecord(input="x", subcommand="parse")
        assert "\n" in record.to_json_line(pretty=True)

    @pytest.mark.parametrize(
        "verdict, error, failed",
        [
            ({"verdict": "stratified"}, None, False),
            ({"verdict": "theorem-violation"}, None, True),
            ({"verdict": "unstratified", "oracle": "disagree"}, None, True),
            ({"verdict": "unstratified", "oracle": "agree"}, None, False),
            (None, {"code": "SYNTAX_ERROR"}, True),
            (None, None, False),
        ],
    )
    def test_failed(self, verdict, error, failed):
        """Test which records make the run fail."""
        record = RunRecord(input="x", subcommand="s", verdict=verdict, error=error)
        assert record.failed is failed

    def test_negative_elapsed(self):
        """Test that elapsed time cannot be negative."""
        with pytest.raises(ValidationError):
            RunRecord(input="x", subcommand="s", elapsed_ms=-1.0)
