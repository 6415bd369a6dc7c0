"""Explicit bounds for zero-counting formulae of Dirichlet L-functions and
Dedekind zeta-functions, with tools to check them numerically."""

__version__ = "0.1.0"

from .characters import DirichletCharacter, enumerate_characters, gauss_sum, kronecker_character
from .constants import BoundParameters, c1, c2, d_constants, derive_params, render_table
from .errors import BoundaryZero, DomainError, NonConvergence, PoleError
from .zerocount import QuadraticField, Rectangle, ZeroCountReport, count_zeros, verify

__all__ = [
    "BoundParameters",
    "BoundaryZero",
    "DirichletCharacter",
    "DomainError",
    "NonConvergence",
    "PoleError",
    "QuadraticField",
    "Rectangle",
    "ZeroCountReport",
    "c1",
    "c2",
    "count_zeros",
    "d_constants",
    "derive_params",
    "enumerate_characters",
    "gauss_sum",
    "kronecker_character",
    "render_table",
    "verify",
]
