"""Coevolving opinion/friendship network simulator."""

__version__ = "0.1.0"
