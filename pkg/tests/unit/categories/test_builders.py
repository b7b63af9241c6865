"""
Unit tests for the ready-made categories.
"""

import pytest

from src.categories.builders import (
    from_arrows,
    set_category,
    set_function,
    subset_label,
    terminal_category,
    total_order,
)
from src.categories.category import is_preorder, validate_category
from src.utils.exceptions import FeasibilityError


class TestFromArrows:
    """Test from_arrows and the small named shapes."""

    def test_identities_filled_in(self):
        """Test that identity composites are added automatically."""
        category = from_arrows(["A", "B"], [("f", "A", "B")])
        assert category.composite("id_B", "f") == "f"
        assert category.composite("f", "id_A") == "f"
        assert validate_category(category) == []

    def test_terminal(self):
        """Test the one-object one-morphism category."""
        category = terminal_category()
        assert category.objects == ("*",)
        assert len(category.morphisms) == 1

    def test_total_order(self):
        """Test that a total order on three labels is a valid preorder."""
        category = total_order(["0", "1", "2"])
        assert len(category.morphisms) == 6
        assert category.hom("2", "0") == ("2>0",)
        assert category.hom("0", "2") == ()
        assert category.composite("1>0", "2>1") == "2>0"
        assert is_preorder(category)
        assert validate_category(category) == []


class TestSetCategory:
    """Test Set(U)."""

    def test_two_element_carrier(self):
        """Test the objects and morphisms of Set({0, 1})."""
        category = set_category(["0", "1"])
        assert category.objects == ("{}", "{0}", "{1}", "{0,1}")
        assert len(category.morphisms) == 18
        assert len(category.hom("{0,1}", "{0,1}")) == 4
        assert validate_category(category) == []

    def test_identity_labels(self):
        """Test that identities are the identity functions."""
        category = set_category(["0", "1"])
        ident = category.identity("{0,1}")
        assert set_function(ident) == {"0": "0", "1": "1"}
        assert set_function(category.identity("{}")) == {}

    def test_composition(self):
        """Test composing functions through their labels."""
        category = set_category(["0", "1"])
        swap = "{0,1}->{0,1}[0>1,1>0]"
        assert category.composite(swap, swap) == category.identity("{0,1}")

    def test_carrier_cap(self):
        """Test that large carriers are refused."""
        with pytest.raises(FeasibilityError) as exc_info:
            set_category(["0", "1", "2", "3"])
        assert exc_info.value.requested == 4

    def test_subset_label(self):
        """Test that labels sort their elements."""
        assert subset_label(["1", "0"]) == "{0,1}"
        assert subset_label([]) == "{}"
