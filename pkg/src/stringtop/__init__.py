"""Exact string topology computations on dg Frobenius algebras and lens spaces."""
__version__ = "0.1.0"
