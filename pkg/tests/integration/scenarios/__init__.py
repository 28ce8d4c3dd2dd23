"""Bundled scenario integration tests."""
