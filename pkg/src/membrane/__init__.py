"""Iterated integrals over two-dimensional membranes."""

__version__ = "0.1.0"
