"""Unit tests for schemas."""
