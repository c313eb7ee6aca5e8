"""Process pool helper with input-ordered results."""

from __future__ import annotations

import logging
from multiprocessing import Pool
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_ordered(func: Callable[[T], R], tasks: Sequence[T], workers: int = 1) -> List[R]:
    """Map func over tasks; results keep task order whatever the schedule.

    func must be a module-level callable so it pickles. A single worker or a
    single task runs inline.
    """
    if workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    n_workers = min(workers, len(tasks))
    logger.debug(f"Dispatching {len(tasks)} tasks to {n_workers} workers")
    with Pool(n_workers) as pool:
        return pool.map(func, tasks)
