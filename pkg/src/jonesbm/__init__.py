"""Exact workbench for Nomura algebras, Jones pairs and spin models."""

from .scalar import EXACT, Cyc, parse_scalar, sqrt_int, zeta
from .linalg import Mat, MatSpace

__version__ = "0.1.0"

__all__ = ["EXACT", "Cyc", "Mat", "MatSpace", "parse_scalar", "sqrt_int", "zeta"]
