"""Exact computations in tau-tilting theory and two-term silting theory."""

__version__ = "0.1.0"
