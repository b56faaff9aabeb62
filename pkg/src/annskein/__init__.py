"""Exact computations for annular closures of braids."""

__version__ = "0.1.0"
