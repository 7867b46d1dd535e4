"""Exact enumeration of a-hypermaps, quantum-curve verification, and
topological recursion on the spectral curves x = z^(a-1) + 1/z, y = z."""

__version__ = "0.1.0"
