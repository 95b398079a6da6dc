"""Exact recognition of cyclotomic polynomials, detection of cyclotomic
factors, and LRS degeneracy orders for integer polynomials."""

__version__ = "0.1.0"
