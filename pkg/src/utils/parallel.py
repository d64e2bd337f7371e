from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence, TypeVar

from ..config import THREADS_ENV_VAR


logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(limit: int = 3, env: Optional[dict[str, str]] = None) -> int:
    """Worker count for per-channel work, capped by ``SIR_THREADS`` (0 = auto)."""
    env = os.environ if env is None else env
    raw = env.get(THREADS_ENV_VAR, "").strip()
    auto = max(1, min(limit, os.cpu_count() or 1))
    if not raw:
        return auto
    try:
        requested = int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r (not an integer)", THREADS_ENV_VAR, raw)
        return auto
    if requested < 0:
        logger.warning("ignoring %s=%r (negative)", THREADS_ENV_VAR, raw)
        return auto
    if requested == 0:
        return auto
    return max(1, min(limit, requested))


def map_ordered(fn: Callable[..., R], *columns: Sequence[T], workers: Optional[int] = None) -> list[R]:
    """``list(map(fn, *columns))`` on a thread pool; results keep input order."""
    count = min(len(col) for col in columns) if columns else 0
    workers = resolve_workers(limit=max(count, 1)) if workers is None else workers
    if workers <= 1 or count <= 1:
        return [fn(*args) for args in zip(*columns)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *columns))
