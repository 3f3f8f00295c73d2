"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``ORTHONORM_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

BACKEND = "python"

if os.environ.get("ORTHONORM_PURE_PYTHON", "") not in ("", "0"):
    from ._fallback import christoffel, recur, recur_all, stieltjes
else:
    try:
        from ._kernels import christoffel, recur, recur_all, stieltjes

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._fallback import christoffel, recur, recur_all, stieltjes

__all__ = ["BACKEND", "christoffel", "recur", "recur_all", "stieltjes"]
