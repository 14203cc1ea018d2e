"""Marked lattices over R, C, H and O and their compactifications."""

__version__ = "0.1.0"
