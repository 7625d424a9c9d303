"""Hybrid fractional-order fuzzy PID controllers with evolutionary tuning."""

__version__ = "0.1.0"
