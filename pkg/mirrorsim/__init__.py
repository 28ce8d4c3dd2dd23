"""
File: __init__.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

__version__ = "0.1.0"
