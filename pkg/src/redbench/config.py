"""Runtime defaults shared by solvers and the CLI."""

import os

ENV_LOG_BOUND = "REDBENCH_LOG_BOUND"

_FALLBACK_LOG_BOUND = 20


def default_log_bound() -> int:
    """Log2 of the default solver element bound, overridable via the environment."""
    raw = os.environ.get(ENV_LOG_BOUND)
    if raw is None:
        return _FALLBACK_LOG_BOUND
    value = int(raw)
    if value < 1:
        raise ValueError(f"{ENV_LOG_BOUND} must be a positive integer, got {raw!r}")
    return value


def default_element_bound() -> int:
    return 1 << default_log_bound()
