"""Decoder oracle and round-trip fidelity reports."""

from tabimage.verification.decoder import DecodedSample, decode, foreground_coverage
from tabimage.verification.report import RoundtripReport, roundtrip_report

__all__ = ["DecodedSample", "RoundtripReport", "decode", "foreground_coverage", "roundtrip_report"]
