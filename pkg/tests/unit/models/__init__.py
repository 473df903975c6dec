"""Unit tests for the linear probe and its metrics."""
