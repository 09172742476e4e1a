"""Exact symbolic verification engine for q-deformed orthogonal
coordinate algebras, their exterior fiber algebras and the Dolbeault
Laplacian spectrum on quantum quadrics."""

from .backend import BACKEND_NAME
from .field import FieldElem, eval_at, qint
from .ncpoly import NCPoly, deglex_compare, nc_mul

__all__ = [
    "BACKEND_NAME",
    "FieldElem",
    "NCPoly",
    "deglex_compare",
    "eval_at",
    "nc_mul",
    "qint",
]

__version__ = "0.1.0"
