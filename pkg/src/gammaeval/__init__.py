"""Exact and high-precision tooling for gamma evaluations of hypergeometric series."""

__version__ = "0.1.0"
