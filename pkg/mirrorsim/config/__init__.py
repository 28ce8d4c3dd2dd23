"""
File: __init__.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from .settings import Settings, SettingsDep, get_settings, settings

__all__ = ["Settings", "settings", "get_settings", "SettingsDep"]
