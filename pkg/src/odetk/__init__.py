"""Exact toolkit for linear differential operators over Q(x)."""

from .arith import Poly, RatFunc
from .diffop import DiffOp
from .errors import OdetkError

__version__ = "0.1.0"

__all__ = ["Poly", "RatFunc", "DiffOp", "OdetkError"]
