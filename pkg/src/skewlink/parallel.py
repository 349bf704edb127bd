"""Thread-pool sizing for independent fits."""

from __future__ import annotations

import os

__all__ = ["worker_count"]


def worker_count(n_tasks: int | None = None) -> int:
    """Workers to use for independent fits: SKEWLINK_THREADS caps the pool,
    defaulting to the machine's core count."""
    raw = os.environ.get("SKEWLINK_THREADS", "")
    try:
        cap = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        raise ValueError(f"SKEWLINK_THREADS must be an integer, got {raw!r}") from None
    cap = max(cap, 1)
    if n_tasks is not None:
        cap = min(cap, max(n_tasks, 1))
    return cap
