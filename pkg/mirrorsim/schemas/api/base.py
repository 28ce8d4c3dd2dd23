"""
File: base.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from typing import Any, Generic, TypeVar

from pydantic import BaseModel

T = TypeVar("T")


class SuccessResponse(BaseModel, Generic[T]):  # noqa: UP046
    """
    Envelope of every successful response.

    Attributes:
        success: Always True.
        message: Short description of what was computed.
        data: Payload.
    """

    success: bool = True
    message: str = "Success"
    data: T | None = None


class ErrorResponse(BaseModel):
    """
    Envelope written by the exception handlers.

    Attributes:
        success: Always False.
        error_code: SimulationError code (e.g. "INVALID_KERNEL"),
            "VALIDATION_ERROR" or "INTERNAL_ERROR".
        message: Error detail.
        errors: Field errors of a rejected request body.
        path: Request path.
    """

    success: bool = False
    error_code: str
    message: str
    errors: list[dict[str, Any]] | None = None
    path: str


# OpenAPI documentation of the handler responses
ERROR_RESPONSES: dict[int | str, dict[str, Any]] = {
    422: {
        "model": ErrorResponse,
        "description": "Invalid request or simulation precondition",
    },
    500: {"model": ErrorResponse, "description": "Unexpected failure"},
}
