"""
File: exceptions.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from fastapi import Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from mirrorsim.core.logger import get_logger

logger = get_logger(__name__)


class SimulationError(Exception):
    """
    Base exception class for simulator errors.

    Attributes:
        detail: Error message detail.
        error_code: Machine-readable error code.
        exit_code: Process exit status used by the CLI.
        status_code: HTTP status code used by the service.
    """

    error_code = "SIMULATION_ERROR"
    exit_code = 1
    status_code = 422

    def __init__(self, detail: str, error_code: str | None = None):
        """
        Initialize simulation exception.

        Args:
            detail: Error message.
            error_code: Optional error code overriding the class default.
        """
        self.detail = detail
        if error_code is not None:
            self.error_code = error_code
        super().__init__(self.detail)


class GridError(SimulationError):
    """Invalid lattice parameters or off-lattice indices."""

    error_code = "INVALID_GRID"


class RepresentationError(SimulationError):
    """Field is in the wrong representation, kernel or basis."""

    error_code = "REPRESENTATION_MISMATCH"


class NonInvertibleKernelError(RepresentationError):
    """The kernel has no inverse transform (positive-only kernel)."""

    error_code = "NON_INVERTIBLE_KERNEL"


class PacketError(SimulationError):
    """Wave packet parameters violate resolution or band limits."""

    error_code = "INVALID_PACKET"


class KernelError(SimulationError):
    """Mirror coupling kernel is malformed."""

    error_code = "INVALID_KERNEL"


class StepCountError(SimulationError):
    """Too few RK4 substeps for the kernel sharpness or horizon."""

    error_code = "UNSTABLE_STEP_COUNT"


class ScatteringWindowError(SimulationError):
    """Packets overlap the mirror at the ends of a scattering window."""

    error_code = "PACKET_TOUCHES_MIRROR"


class SerializationError(SimulationError):
    """State, kernel or record payload cannot be decoded."""

    error_code = "INVALID_PAYLOAD"


class ScenarioError(SimulationError):
    """Scenario file violates the schema; message carries file and line."""

    error_code = "SCENARIO_SCHEMA"
    exit_code = 2


class StrictModeError(SimulationError):
    """A numerical warning promoted to an error by strict mode."""

    error_code = "STRICT_WARNING"


# Exception Handlers


def simulation_exception_handler(request: Request, exc: Exception):
    """
    Handler for simulator exceptions.

    Args:
        request: FastAPI request object.
        exc: The raised simulation exception.

    Returns:
        JSONResponse: Standardized error response.
    """
    assert isinstance(exc, SimulationError)
    logger.warning(
        f"Simulation error: {exc.error_code!s} - {exc.detail!s} - "
        f"Path: {request.url.path!s}"
    )

    return JSONResponse(
        status_code=exc.status_code,
        content={
            "success": False,
            "error_code": exc.error_code,
            "message": exc.detail,
            "path": str(request.url.path),
        },
    )


def validation_exception_handler(request: Request, exc: Exception):
    """
    Handler for Pydantic validation errors.

    Args:
        request: FastAPI request object.
        exc: The validation error.

    Returns:
        JSONResponse: Standardized validation error response.
    """
    assert isinstance(exc, RequestValidationError)
    logger.warning(
        f"Validation error on {request.url.path!s}: {exc.errors()!s}"
    )

    return JSONResponse(
        status_code=422,
        content={
            "success": False,
            "error_code": "VALIDATION_ERROR",
            "message": "Invalid request data",
            "errors": exc.errors(),
            "path": str(request.url.path),
        },
    )


def general_exception_handler(request: Request, exc: Exception):
    """
    Handler for all unhandled exceptions.

    Args:
        request: FastAPI request object.
        exc: The unhandled exception.

    Returns:
        JSONResponse: Standardized internal error response.
    """
    logger.error(f"Unhandled exception: {exc!s}", exc_info=True)

    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={
            "success": False,
            "error_code": "INTERNAL_ERROR",
            "message": "An internal error occurred",
            "path": str(request.url.path),
        },
    )
