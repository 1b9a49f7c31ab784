"""Exact SL(2, C) character schemes of finitely presented groups."""

__version__ = "0.1.0"
