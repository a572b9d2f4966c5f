"""Ordered thread-pool mapping.

Results always come back in input order, so anything assembled from them is
independent of the number of workers and of scheduling.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence


def ordered_map(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """Apply ``fn`` to every item, in parallel when ``workers > 1``."""
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
