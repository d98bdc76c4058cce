import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Generic, List, Sequence, TypeVar

from core.config import JOBS

logger = logging.getLogger(__name__)

# Generic Type Variables
ItemType = TypeVar("ItemType")
ResultType = TypeVar("ResultType")


class BaseService(Generic[ItemType, ResultType]):
    """Shared document-parallel execution; results always come back in input order."""

    def __init__(self, jobs: int = JOBS):
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        self.jobs = jobs

    def map_documents(self, fn: Callable[[ItemType], ResultType], items: Sequence[ItemType]) -> List[ResultType]:
        # fn must be a module-level function when jobs > 1 (pickled for the workers)
        if self.jobs == 1 or len(items) < 2:
            return [fn(item) for item in items]
        workers = min(self.jobs, len(items))
        chunksize = max(1, len(items) // (workers * 4))
        logger.debug("Mapping %s over %d items with %d workers", getattr(fn, "__name__", fn), len(items), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items, chunksize=chunksize))
