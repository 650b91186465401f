"""Solvers, deciders and reduction compilers for Generalized Solo Chess and the graph capture game."""

__version__ = "0.1.0"
