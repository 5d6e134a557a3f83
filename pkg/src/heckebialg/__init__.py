"""Exact verification toolkit for Hecke operators and matrix bialgebras of type A."""

__version__ = "0.1.0"
