"""Fixing sets, bases and color refinement with individualization."""

__version__ = "0.1.0"
