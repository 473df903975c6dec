"""Test suite for tabimage."""
