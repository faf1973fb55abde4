"""Exact commutative algebra engine and residual intersection experiments."""
from .field import PrimeField, QQ, make_field
from .ring import MonomialOrder, PolynomialRing
from .poly import Polynomial
from .parse import parse_polynomial

__version__ = "1.0.0"

__all__ = ["PrimeField", "QQ", "make_field", "MonomialOrder", "PolynomialRing",
           "Polynomial", "parse_polynomial", "__version__"]
