"""Exact-arithmetic algebra for representation rings and their completions."""

__version__ = "0.1.0"
