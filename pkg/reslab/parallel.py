#!/usr/bin/python3

"""
Process-pool helpers. Results always come back in input order, so any
reduction the caller performs over them runs in the same order whatever
the worker count.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor

from reslab.errors import InvalidInputError

logger = logging.getLogger(__name__)


def resolve_threads(threads):
    """Validates a worker count; 0 means one worker per CPU core."""
    if threads is None:
        return 1
    if threads < 0:
        raise InvalidInputError(f'threads must be >= 0, got {threads}.')
    return threads or os.cpu_count() or 1


def ordered_map(func, items, threads=1, chunksize=None):
    """
    Applies func to every item, in parallel when threads > 1.

    Args:
        func (callable): A picklable, module-level function.
        items (iterable): Arguments, one per call.
        threads (int): Worker processes; 1 runs in-process.
        chunksize (int): Items per task sent to a worker.

    Returns:
        list: func(item) for each item, in input order.
    """
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]
    workers = min(threads, len(items))
    if chunksize is None:
        chunksize = max(1, len(items) // (4 * workers))
    logger.debug('Mapping %d items over %d workers', len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items, chunksize=chunksize))
