"""
File: __init__.py
Project: mirrorsim
Created: Friday, 16th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from .records import (
    AmplitudeRecord,
    GateResult,
    HeaderRecord,
    LedgerRow,
    state_record_adapter,
)
from .scenario import Scenario

__all__ = [
    "AmplitudeRecord",
    "GateResult",
    "HeaderRecord",
    "LedgerRow",
    "Scenario",
    "state_record_adapter",
]
