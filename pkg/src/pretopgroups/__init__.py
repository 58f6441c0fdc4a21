"""Finite pre-topological groups: exact checkers, constructions and exhaustive search."""

__version__ = "0.1.0"
