"""
Unit tests for the formula generators.
"""

import random

import pytest

from src.logic.corpus import (
    _restricted_growth,
    assemble,
    atom_sequences,
    corpus_size,
    exhaustive_formulas,
    quantifier_depth,
    random_closed_formula,
    random_formula,
)
from src.logic.parser import parse
from src.logic.syntax import Dialect, NodeKind, dialect_of, free_variables


class TestRestrictedGrowth:
    """Test the renaming-free variable patterns."""

    def test_capped_blocks(self):
        """Test that the block cap bounds the number of distinct values."""
        assert list(_restricted_growth(2, 4)) == [(0, 0), (0, 1)]

    def test_bell_numbers(self):
        """Test that uncapped sequences count set partitions."""
        assert len(list(_restricted_growth(4, 4))) == 15


class TestExhaustiveCorpus:
    """Test the atom-sequence corpus."""

    def test_size(self):
        """Test the number of formulas over two variables and two atoms."""
        assert len(list(exhaustive_formulas(max_vars=2, max_atoms=2))) == 36

    def test_atom_counts(self):
        """Test that sequences have between one and max_atoms atoms."""
        lengths = {len(atoms) for atoms in atom_sequences(3, 3)}
        assert lengths == {1, 2, 3}

    def test_deterministic(self):
        """Test that the corpus comes out in the same order every time."""
        first = list(exhaustive_formulas(max_vars=2, max_atoms=2))
        second = list(exhaustive_formulas(max_vars=2, max_atoms=2))
        assert first == second

    def test_corpus_size(self):
        """Test the closed-form size against enumeration and the full sweep size."""
        assert corpus_size(2, 2) == 36
        assert corpus_size(3, 3) == len(list(atom_sequences(3, 3)))
        assert corpus_size(4, 5) == 1_452_584

    def test_stride_sample(self):
        """Test that a strided sweep builds exactly every k-th formula of the full one."""
        full = list(exhaustive_formulas(max_vars=3, max_atoms=3))
        assert list(exhaustive_formulas(max_vars=3, max_atoms=3, stride=5)) == full[::5]
        assert list(exhaustive_formulas(max_vars=3, max_atoms=3, stride=5, offset=2)) == full[2::5]
        assert list(exhaustive_formulas(max_vars=3, max_atoms=3, stride=1)) == full

    def test_stride_must_be_positive(self):
        """Test that a zero stride is refused."""
        with pytest.raises(ValueError):
            next(exhaustive_formulas(stride=0))

    def test_assemble_quantifies_every_fourth(self):
        """Test that index 0 negates the first atom and binds the first variable."""
        atoms = ((NodeKind.MEMBER, 0, 1),)
        assert assemble(atoms, 0) == parse("forall x. ~(x in y)")
        assert assemble(atoms, 1) == parse("x in y")

    def test_connectives_rotate(self):
        """Test that the binary connective depends on the index."""
        atoms = ((NodeKind.EQUAL, 0, 0), (NodeKind.MEMBER, 0, 1))
        assert assemble(atoms, 1).kind is NodeKind.OR
        assert assemble(atoms, 2).kind is NodeKind.IMPLIES
        assert assemble(atoms, 7).kind is NodeKind.IFF
        assert assemble(atoms, 4).body.kind is NodeKind.AND


class TestRandomFormulas:
    """Test the random generators."""

    def test_seeded(self):
        """Test that a seed fixes the formula."""
        assert random_formula(random.Random(7)) == random_formula(random.Random(7))

    def test_plain(self):
        """Test that random formulas are plain."""
        for seed in range(20):
            assert dialect_of(random_formula(random.Random(seed))) is Dialect.PLAIN

    def test_atom_budget(self):
        """Test that max_atoms=1 gives a single atom."""
        ast = random_formula(random.Random(3), max_atoms=1)
        assert ast.is_atom

    def test_closed_formulas(self):
        """Test that random sentences are closed and shallow enough."""
        for seed in range(20):
            ast = random_closed_formula(random.Random(seed), max_depth=3)
            assert free_variables(ast) == frozenset()
            assert quantifier_depth(ast) <= 3


class TestQuantifierDepth:
    """Test quantifier_depth."""

    def test_nesting(self):
        """Test that depth counts nested, not sibling, quantifiers."""
        assert quantifier_depth(parse("x in y")) == 0
        assert quantifier_depth(parse("(forall x. x = x) & exists y. y = y")) == 1
        assert quantifier_depth(parse("forall x. exists y. x in y")) == 2
