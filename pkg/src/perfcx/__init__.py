"""Exact computations with perfect complexes over quotients of polynomial rings."""

__version__ = "0.1.0"
