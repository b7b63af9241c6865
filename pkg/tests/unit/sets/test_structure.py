"""
Unit tests for finite membership structures.
"""

import pytest
from pydantic import ValidationError

from src.sets.structure import FiniteStructure, build_vn, vn_elements
from src.utils.exceptions import FeasibilityError


@pytest.fixture
def pair_structure():
    """Two atoms collected in one set, plus an empty set."""
    return FiniteStructure(
        universe=("e", "a", "b", "s"),
        membership=(("a", "s"), ("b", "s")),
        atoms=("a", "b"),
    )


class TestValidation:
    """Test the structure validator."""

    def test_duplicate_element(self):
        """Test that the universe cannot repeat an element."""
        with pytest.raises(ValidationError):
            FiniteStructure(universe=("a", "a"))

    def test_pair_outside_universe(self):
        """Test that membership pairs stay in the universe."""
        with pytest.raises(ValidationError):
            FiniteStructure(universe=("a",), membership=(("a", "b"),))

    def test_constant_outside_universe(self):
        """Test that constants denote elements."""
        with pytest.raises(ValidationError):
            FiniteStructure(universe=("a",), constants={"S": "b"})

    def test_atom_with_members(self):
        """Test that atoms cannot have members."""
        with pytest.raises(ValidationError):
            FiniteStructure(universe=("a", "b"), membership=(("a", "b"),), atoms=("b",))

    def test_frozen(self, pair_structure):
        """Test that structures are immutable."""
        with pytest.raises(ValidationError):
            pair_structure.universe = ("x",)


class TestQueries:
    """Test membership queries."""

    def test_members_of(self, pair_structure):
        """Test the extension of an element."""
        assert pair_structure.members_of("s") == frozenset({"a", "b"})
        assert pair_structure.is_member("a", "s")
        assert not pair_structure.is_member("s", "a")
        assert "s" in pair_structure and "t" not in pair_structure

    def test_atoms_are_not_the_empty_set(self, pair_structure):
        """Test that element_with skips atoms."""
        assert pair_structure.element_with([]) == "e"
        assert pair_structure.element_with(["a", "b"]) == "s"
        assert pair_structure.element_with(["a"]) is None

    def test_restrict(self, pair_structure):
        """Test substructures keep the surviving pairs and constants."""
        structure = pair_structure.with_constants({"S": "s", "T": "e"})
        sub = structure.restrict(["a", "s"])
        assert sub.universe == ("a", "s")
        assert sub.membership == (("a", "s"),)
        assert sub.constants == {"S": "s"}
        assert sub.atoms == ("a",)

    def test_extension_of(self, pair_structure):
        """Test the substructure on an element's members."""
        assert pair_structure.extension_of("s").universe == ("a", "b")

    def test_with_atoms(self):
        """Test adding fresh atoms."""
        structure = build_vn(1).with_atoms(["u", "0"])
        assert structure.universe == ("0", "u")
        assert structure.atoms == ("u",)

    def test_json_dict(self, pair_structure):
        """Test the JSON form accepted back by the constructor."""
        payload = pair_structure.to_json_dict()
        assert payload["atoms"] == ["a", "b"]
        assert FiniteStructure.model_validate(payload) == pair_structure


class TestBuildVn:
    """Test build_vn."""

    def test_small_ranks(self):
        """Test V_0 to V_3."""
        assert build_vn(0).universe == ()
        assert build_vn(1).universe == ("0",)
        v2 = build_vn(2)
        assert v2.membership == (("0", "1"),)
        assert len(build_vn(3).universe) == 4

    def test_v4(self):
        """Test that V_4 has 16 elements and is extensional."""
        v4 = build_vn(4)
        assert len(v4.universe) == 16
        assert v4.members_of("3") == frozenset({"0", "1"})
        extensions = {v4.members_of(e) for e in v4.universe}
        assert len(extensions) == 16

    def test_vn_elements(self):
        """Test the identifiers of V_m inside larger ranks."""
        assert vn_elements(2) == ["0", "1"]
        assert set(vn_elements(3)) <= set(build_vn(4).universe)

    def test_rank_cap(self):
        """Test that ranks above the cap are refused."""
        with pytest.raises(FeasibilityError) as exc_info:
            build_vn(4, max_rank=3)
        assert exc_info.value.limit == 3
        with pytest.raises(FeasibilityError):
            build_vn(6, max_rank=10)

    def test_negative_rank(self):
        """Test that ranks are natural numbers."""
        with pytest.raises(ValueError):
            build_vn(-1)
