"""Unit tests for configuration module."""
