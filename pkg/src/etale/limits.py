"""Size caps for the exhaustive enumerations.

Caps live in a context variable so that concurrent callers can override
them independently::

    with using_limits(max_frame=24):
        points = frame_points(big_frame)
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace

from .errors import SizeCapExceeded


@dataclass(frozen=True)
class Limits:
    max_frame: int = 20
    max_subsets: int = 2 ** 14
    max_arrows: int = 24


_current = contextvars.ContextVar("etale_limits", default=Limits())


def get_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def using_limits(**overrides):
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def check_cap(name: str, value: int) -> None:
    cap = getattr(get_limits(), name)
    if value > cap:
        raise SizeCapExceeded(f"{name}: {value} exceeds cap {cap}")
