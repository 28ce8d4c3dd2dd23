"""
File: __init__.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from .health import router as health_router
from .simulation import router as simulation_router

__all__ = ["health_router", "simulation_router"]
