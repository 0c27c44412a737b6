"""Exact skein and Gauss-diagram invariants of classical, virtual and welded knots."""

__version__ = "0.1.0"
