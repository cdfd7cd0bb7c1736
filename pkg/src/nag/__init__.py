"""Exact computations for matrix props, partial isometries, the compactified spectrum of Z and the cyclotomic Witt ring."""

__version__ = "0.1.0"
