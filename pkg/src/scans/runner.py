"""
Worker pool for scan grids.

Grid points are independent; they are evaluated in a process pool and the
results come back in input order.
"""
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from src.core.errors import ConfigError

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "ANTIBUNCH_THREADS"


def resolve_workers(threads: Optional[int] = None) -> int:
    """--threads, else ANTIBUNCH_THREADS, else the CPU count."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV)
        if raw:
            try:
                threads = int(raw)
            except ValueError:
                raise ConfigError(f"{THREADS_ENV} must be an integer, got '{raw}'")
    if threads is None:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ConfigError(f"worker count must be at least 1, got {threads}")
    return threads


def _install_warning_filters(filters) -> None:
    """Pool initializer: reproduce the parent's warning filters in a worker."""
    warnings.resetwarnings()
    for action, message, category, module, lineno in reversed(filters):
        warnings.filterwarnings(action, message=message.pattern if message else "", category=category,
                                module=module.pattern if module else "", lineno=lineno)


def run_ordered(func: Callable[[T], R], tasks: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply `func` to every task, in parallel when more than one worker is allowed.

    `func` must be a module-level function so the pool can pickle it. Workers
    start with the caller's warning filters, so an ignored ApproximationWarning
    stays ignored whatever the start method.
    """
    tasks = list(tasks)
    workers = min(resolve_workers(threads), max(1, len(tasks)))
    if workers == 1:
        return [func(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers, initializer=_install_warning_filters,
                             initargs=(list(warnings.filters),)) as pool:
        return list(pool.map(func, tasks))
