"""Exact-arithmetic verification of the modular proof of the Chudnovsky 1/pi series."""

__version__ = "0.1.0"
