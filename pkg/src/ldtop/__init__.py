"""Exact computations on locally finite simplicial complexes."""

__version__ = "0.1.0"
