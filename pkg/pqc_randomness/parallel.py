""" parallel module - deterministic fan out of sample ranges over worker processes

Samples are cut into fixed, even sized chunks that do not depend on the worker count, and chunk results
come back in chunk order.  Any reduction done on the concatenated result therefore sees the same array
whether one process or many did the work.  Even chunks keep fidelity pairs (2i, 2i + 1) inside a chunk.
"""

# Standard Library Imports
import multiprocessing
import os
from typing import Callable, List, Tuple, TypeVar, Union

# Application Imports
from pqc_randomness._logger import logger
from pqc_randomness.errors import ArgumentError

CHUNK_SIZE = 500

T = TypeVar("T")


def resolve_workers(workers: Union[int, str]) -> int:
    """ 'auto' becomes the cpu count; anything else must be a positive integer """
    if isinstance(workers, str):
        if workers.strip().lower() == "auto":
            return os.cpu_count() or 1
        try:
            workers = int(workers)
        except ValueError:
            workers = 0
    if not isinstance(workers, int) or workers < 1:
        msg = f"workers must be a positive integer or 'auto'.  Instead, {workers!r} was passed."
        logger.error(msg)
        raise ArgumentError(msg)
    return workers


def chunk_bounds(n_items: int, chunk_size: int = CHUNK_SIZE) -> List[Tuple[int, int]]:
    return [(start, min(start + chunk_size, n_items)) for start in range(0, n_items, chunk_size)]


def map_ordered(func: Callable[..., T], tasks: List[tuple], workers: int = 1) -> List[T]:
    """ func(*task) for every task, results in task order; spawn context pool when workers > 1 """
    if workers <= 1 or len(tasks) <= 1:
        return [func(*task) for task in tasks]
    processes = min(workers, len(tasks))
    logger.debug(f"fanning {len(tasks)} tasks out over {processes} processes")
    with multiprocessing.get_context("spawn").Pool(processes=processes) as pool:
        return pool.starmap(func, tasks)


def map_chunks(func: Callable[[int, int], T], n_items: int, workers: int = 1,
               chunk_size: int = CHUNK_SIZE) -> List[T]:
    """ func(start, stop) over the fixed chunks of range(n_items) """
    return map_ordered(func, chunk_bounds(n_items, chunk_size), workers)
