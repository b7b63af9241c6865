"""
Order-preserving batch execution over worker processes.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from src.utils.logging import get_logger

T = TypeVar("T")
R = TypeVar("R")

logger = get_logger(__name__)


def run_batch(func: Callable[[T], R], items: Iterable[T], *, jobs: int = 1) -> List[R]:
    """
    Apply ``func`` to every item and return the results in input order.

    With ``jobs`` > 1 the items are spread over worker processes; ``func`` and the
    items must then be picklable, so pass a module-level function.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    workers = min(jobs, len(items))
    logger.debug(
        "Running batch in worker processes",
        extra={"extra_data": {"items": len(items), "workers": workers}},
    )
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
