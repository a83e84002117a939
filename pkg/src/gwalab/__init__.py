"""Exact computations for generalized Weyl algebras and their growth."""

__version__ = "0.1.0"
