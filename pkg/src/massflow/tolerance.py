"""The numerical tolerance shared by sum checks and focal pruning."""

from __future__ import annotations

import contextlib
import contextvars
from typing import Iterator

DEFAULT_EPSILON = 1e-9
MIN_EPSILON = 1e-15
MAX_EPSILON = 1e-3

_epsilon: contextvars.ContextVar[float] = contextvars.ContextVar(
    "massflow_epsilon", default=DEFAULT_EPSILON
)


def get_epsilon() -> float:
    return _epsilon.get()


@contextlib.contextmanager
def epsilon(value: float) -> Iterator[float]:
    """Temporarily override the tolerance in the current context.

    >>> with epsilon(1e-6):
    ...     get_epsilon()
    1e-06
    """
    value = float(value)
    if not MIN_EPSILON <= value <= MAX_EPSILON:
        raise ValueError(f"epsilon must lie in [{MIN_EPSILON}, {MAX_EPSILON}], got {value}")
    token = _epsilon.set(value)
    try:
        yield value
    finally:
        _epsilon.reset(token)
