"""
File: test_exceptions.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

import json

from fastapi import Request
import pytest

from mirrorsim.core import (
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
)


def _request(path: str = "/api/v1/spectrum") -> Request:
    return Request(
        {
            "type": "http",
            "method": "POST",
            "scheme": "http",
            "server": ("testserver", 80),
            "path": path,
            "query_string": b"",
            "headers": [],
        }
    )


@pytest.mark.unit
@pytest.mark.parametrize(
    ("cls", "code"),
    [
        (GridError, "INVALID_GRID"),
        (RepresentationError, "REPRESENTATION_MISMATCH"),
        (NonInvertibleKernelError, "NON_INVERTIBLE_KERNEL"),
        (PacketError, "INVALID_PACKET"),
        (KernelError, "INVALID_KERNEL"),
        (StepCountError, "UNSTABLE_STEP_COUNT"),
        (ScatteringWindowError, "PACKET_TOUCHES_MIRROR"),
        (SerializationError, "INVALID_PAYLOAD"),
        (StrictModeError, "STRICT_WARNING"),
    ],
)
def test_error_codes(cls: type[SimulationError], code: str) -> None:
    """Each error class carries its code, exit status 1 and HTTP 422."""
    exc = cls("boom")
    assert exc.error_code == code
    assert exc.exit_code == 1
    assert exc.status_code == 422
    assert exc.detail == "boom"
    assert str(exc) == "boom"


@pytest.mark.unit
def test_scenario_error_exit_code() -> None:
    """Schema violations exit with status 2."""
    exc = ScenarioError("bad.toml:3: missing field")
    assert exc.error_code == "SCENARIO_SCHEMA"
    assert exc.exit_code == 2


@pytest.mark.unit
def test_non_invertible_is_a_representation_error() -> None:
    """Callers catching representation problems see the kernel case too."""
    assert issubclass(NonInvertibleKernelError, RepresentationError)


@pytest.mark.unit
def test_error_code_override() -> None:
    """An explicit code overrides the class default on the instance."""
    exc = KernelError("x", error_code="CUSTOM")
    assert exc.error_code == "CUSTOM"
    assert KernelError.error_code == "INVALID_KERNEL"


@pytest.mark.unit
def test_simulation_exception_handler() -> None:
    """The handler renders the standard error body."""
    response = simulation_exception_handler(
        _request(), KernelError("site 0 is nonzero")
    )
    assert response.status_code == 422
    assert json.loads(response.body) == {
        "success": False,
        "error_code": "INVALID_KERNEL",
        "message": "site 0 is nonzero",
        "path": "/api/v1/spectrum",
    }


@pytest.mark.unit
def test_general_exception_handler() -> None:
    """Unexpected errors become a 500 without leaking the message."""
    response = general_exception_handler(_request("/x"), RuntimeError("no"))
    body = json.loads(response.body)
    assert response.status_code == 500
    assert body["error_code"] == "INTERNAL_ERROR"
    assert body["message"] == "An internal error occurred"
