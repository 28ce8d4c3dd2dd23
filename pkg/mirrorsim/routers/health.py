"""
File: health.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from fastapi import APIRouter

from mirrorsim.config import SettingsDep
from mirrorsim.schemas.api import HealthResponse, SuccessResponse
from mirrorsim.services.scenario_runner import bundled_scenarios

router = APIRouter(tags=["health"])


@router.get("/health", response_model=SuccessResponse[HealthResponse])
def health(settings: SettingsDep) -> SuccessResponse[HealthResponse]:
    """
    Liveness probe.

    Returns:
        SuccessResponse[HealthResponse]: Status, version and scenario count.
    """
    return SuccessResponse(
        message="Service is healthy",
        data=HealthResponse(
            version=settings.APP_VERSION, scenarios=len(bundled_scenarios())
        ),
    )
