"""
Parallel Grid Runner
====================
Fans independent evaluations out over a thread pool and gathers them in input order
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

from src.utils.config import config
from src.utils.logger import logger

T = TypeVar("T")
R = TypeVar("R")


class ParallelRunner:
    """Runs a function over a sequence of items on a thread pool"""

    def __init__(self, workers: Optional[int] = None, label: str = "grid"):
        self.workers = config.thread_count(workers)
        self.label = label

    def map(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """
        Evaluate func on every item

        Args:
            func: Function of one item
            items: Items to evaluate

        Returns:
            list: Results in the order of `items`, independent of scheduling

        Raises:
            Exception: The first failure in input order, after all items finished
        """
        if not items:
            return []
        if self.workers == 1 or len(items) == 1:
            return [func(item) for item in items]

        logger.debug(f"{self.label}: {len(items)} items on {self.workers} workers")
        results: List[Optional[R]] = [None] * len(items)
        errors = {}
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = {executor.submit(func, item): i for i, item in enumerate(items)}
            for future in as_completed(futures):
                index = futures[future]
                try:
                    results[index] = future.result()
                except Exception as e:
                    errors[index] = e

        if errors:
            first = min(errors)
            logger.debug(f"{self.label}: {len(errors)} item(s) failed, first at index {first}")
            raise errors[first]
        return results  # type: ignore[return-value]


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None, label: str = "grid") -> List[R]:
    """Shorthand for ParallelRunner(workers, label).map(func, items)"""
    return ParallelRunner(workers, label).map(func, items)
