"""
File: __init__.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from .base import ERROR_RESPONSES, ErrorResponse, SuccessResponse
from .health import HealthResponse
from .simulation import (
    CheckResponse,
    RunSummary,
    ScenarioListResponse,
    SpectrumRequest,
    SpectrumResponse,
    SpectrumRow,
)

__all__ = [
    "ERROR_RESPONSES",
    "SuccessResponse",
    "ErrorResponse",
    "HealthResponse",
    "CheckResponse",
    "RunSummary",
    "ScenarioListResponse",
    "SpectrumRequest",
    "SpectrumResponse",
    "SpectrumRow",
]
