"""
File: __init__.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from .events import emit_warning, strict_warnings
from .exceptions import (
    GridError,
    KernelError,
    NonInvertibleKernelError,
    PacketError,
    RepresentationError,
    ScatteringWindowError,
    ScenarioError,
    SerializationError,
    SimulationError,
    StepCountError,
    StrictModeError,
    general_exception_handler,
    simulation_exception_handler,
    validation_exception_handler,
)
from .logger import JsonRecordFormatter, get_logger, setup_logging

__all__ = [
    "get_logger",
    "setup_logging",
    "JsonRecordFormatter",
    "emit_warning",
    "strict_warnings",
    "SimulationError",
    "GridError",
    "RepresentationError",
    "NonInvertibleKernelError",
    "PacketError",
    "KernelError",
    "StepCountError",
    "ScatteringWindowError",
    "SerializationError",
    "ScenarioError",
    "StrictModeError",
    "simulation_exception_handler",
    "validation_exception_handler",
    "general_exception_handler",
]
