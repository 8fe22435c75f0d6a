"""Thread cap for the dense linear algebra inside the solvers."""

import os

from threadpoolctl import threadpool_limits

ENV_VAR = "CHM_THREADS"


def configured_threads():
    """Value of CHM_THREADS, or the number of available cores when unset."""
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def thread_limit():
    return threadpool_limits(limits=configured_threads())
