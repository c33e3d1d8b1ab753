"""Worker pool for sweep points."""

from concurrent.futures import ThreadPoolExecutor, as_completed
from collections.abc import Callable, Sequence
from typing import TypeVar

from core.logger_utils import get_logger

logger = get_logger(__name__)

PointT = TypeVar("PointT")
ResultT = TypeVar("ResultT")


def run_sweep(points: Sequence[PointT], task: Callable[[PointT], ResultT], jobs: int = 1) -> list[ResultT]:
    """
    Evaluate ``task`` on every point with up to ``jobs`` workers.

    Results come back in the order of ``points`` whatever order they finish in;
    the first exception raised by a task propagates.
    """
    results: list[ResultT | None] = [None] * len(points)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        future_to_index = {executor.submit(task, point): index for index, point in enumerate(points)}
        for done, future in enumerate(as_completed(future_to_index), start=1):
            results[future_to_index[future]] = future.result()
            logger.debug("Sweep point done", done=done, total=len(points))
    return results  # type: ignore[return-value]
