"""Order-preserving parallel map for independent evaluations"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from optical_hqc.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None
) -> List[R]:
    """
    Evaluate func on every item, returning results in input order

    numpy releases the GIL inside expm and matrix products, so threads give
    real overlap without pickling operators.

    Args:
        func: Function of one item
        items: Inputs
        workers: Thread count (settings.workers if None); 1 runs inline

    Returns:
        List of results in the order of items
    """
    items = list(items)
    workers = settings.workers if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug(f"Evaluating {len(items)} items on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
