"""Orthonormal polynomials for generalized Jacobi weights, weighted norms,
and growth-exponent experiments for Nikolskii-type inequalities."""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
