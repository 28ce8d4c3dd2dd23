"""Unit tests for the physics engines."""
