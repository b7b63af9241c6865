"""
Unit tests for order-preserving batch execution.
"""

from src.utils.batch import run_batch


class TestRunBatch:
    """Test run_batch."""

    def test_sequential(self):
        """Test the in-process path."""
        assert run_batch(abs, [-3, 1, -2]) == [3, 1, 2]

    def test_empty(self):
        """Test that no items give no results."""
        assert run_batch(abs, [], jobs=4) == []

    def test_worker_processes(self):
        """Test that worker processes keep the input order."""
        items = list(range(-10, 0))
        assert run_batch(abs, items, jobs=3) == [abs(i) for i in items]

    def test_single_item_stays_in_process(self, mocker):
        """Test that one item never starts a pool."""
        pool = mocker.patch("src.utils.batch.ProcessPoolExecutor")
        assert run_batch(abs, [-1], jobs=8) == [1]
        pool.assert_not_called()
