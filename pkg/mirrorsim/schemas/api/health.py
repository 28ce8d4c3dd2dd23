"""
File: health.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    """Service status, version and the number of bundled scenarios."""

    status: str = "ok"
    version: str
    scenarios: int = Field(..., ge=0)
