"""
File: events.py
Project: mirrorsim
Created: Tuesday, 13th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
import logging
from typing import Any

from mirrorsim.core.exceptions import StrictModeError

_strict: ContextVar[bool] = ContextVar("mirrorsim_strict", default=False)


def emit_warning(
    logger: logging.Logger, code: str, message: str, **fields: Any
) -> None:
    """
    Emit a structured numerical warning.

    The record carries an `event` payload ({"code": ..., **fields}) that
    the JSON formatter flattens into one line on stderr. Inside
    `strict_warnings()` the warning is raised instead.

    Args:
        logger: Module logger.
        code: Machine-readable warning code (e.g. "WRAP_AROUND").
        message: Human-readable description.
        **fields: Extra JSON-serialisable context.

    Raises:
        StrictModeError: When strict mode is active.
    """
    if _strict.get():
        raise StrictModeError(f"{code}: {message}")
    logger.warning(message, extra={"event": {"code": code, **fields}})


@contextmanager
def strict_warnings(enabled: bool = True) -> Iterator[None]:
    """Promote `emit_warning` calls to errors for the enclosed block."""
    token = _strict.set(enabled)
    try:
        yield
    finally:
        _strict.reset(token)
