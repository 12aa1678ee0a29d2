"""Exact computations with virtually abelian groups Z^n . Q, Q finite."""

from .catalog import CATALOG, builtin, load_group_file, resolve
from .core import Element, VAPresentation, finite_quotient, inverse, multiply, power
from .errors import VAError

__all__ = [
    "CATALOG",
    "Element",
    "VAError",
    "VAPresentation",
    "builtin",
    "finite_quotient",
    "inverse",
    "load_group_file",
    "multiply",
    "power",
    "resolve",
]
