"""Classical Jacobi polynomials P_n^{(alpha, beta)}."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import kernels
from .errors import DomainError
from .special import log_gamma

__all__ = [
    "JacobiParams",
    "JacobiPolynomial",
    "jacobi_eval",
    "jacobi_eval_all",
    "jacobi_h",
    "jacobi_matrix",
    "jacobi_mass",
    "jacobi_sup_exponent",
    "jacobi_zeros",
]


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise DomainError(
                f"Jacobi parameters require alpha > -1 and beta > -1, got ({self.alpha}, {self.beta})"
            )


def _check_x(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(~(np.abs(arr) <= 1.0)):
        raise DomainError("x must lie in [-1, 1]")
    return arr


@lru_cache(maxsize=64)
def _coefficients(alpha: float, beta: float, n: int):
    """Coefficients of P_{k+1} = (A_k x + B_k) P_k - C_k P_{k-1}, k < n."""
    A = np.empty(max(n, 1))
    B = np.empty(max(n, 1))
    C = np.zeros(max(n, 1))
    ab = alpha + beta
    A[0] = 0.5 * (ab + 2.0)
    B[0] = 0.5 * (alpha - beta)
    k = np.arange(1, n, dtype=float)
    s = 2.0 * k + ab
    d = 2.0 * (k + 1.0) * (k + ab + 1.0) * s
    A[1:n] = (s + 1.0) * (s + 2.0) * s / d
    B[1:n] = (s + 1.0) * (alpha * alpha - beta * beta) / d
    C[1:n] = 2.0 * (k + alpha) * (k + beta) * (s + 2.0) / d
    for arr in (A, B, C):
        arr.flags.writeable = False
    return A, B, C


def jacobi_eval(params: JacobiParams, n: int, x):
    """P_n^{(alpha, beta)}(x) by forward recurrence; scalar in, scalar out."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    arr = _check_x(x)
    if n == 0:
        out = np.ones_like(arr)
    else:
        A, B, C = _coefficients(params.alpha, params.beta, n)
        out = kernels.recur(A, B, C, 1.0, np.ascontiguousarray(arr.ravel()), n).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def jacobi_eval_all(params: JacobiParams, n: int, x) -> np.ndarray:
    """Rows P_0(x), ..., P_n(x) in one pass, shape (n + 1, len(x))."""
    arr = np.atleast_1d(_check_x(x)).ravel()
    A, B, C = _coefficients(params.alpha, params.beta, max(n, 1))
    return kernels.recur_all(A, B, C, 1.0, np.ascontiguousarray(arr), n)


def jacobi_h(params: JacobiParams, n: int) -> float:
    """Squared L2 norm of P_n^{(alpha, beta)} against (1-x)^alpha (1+x)^beta."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    a, b = params.alpha, params.beta
    log_h = (a + b + 1.0) * math.log(2.0) + log_gamma(n + a + 1.0) + log_gamma(n + b + 1.0)
    log_h -= log_gamma(n + 1.0)
    if n == 0:
        # (a + b + 1) Gamma(a + b + 1) = Gamma(a + b + 2) also covers a + b = -1
        log_h -= log_gamma(a + b + 2.0)
    else:
        log_h -= math.log(2 * n + a + b + 1.0) + log_gamma(n + a + b + 1.0)
    return math.exp(log_h)


def jacobi_sup_exponent(params: JacobiParams) -> float:
    """Growth exponent s in max |P_n| ~ n^s."""
    m = max(params.alpha, params.beta)
    return m if m >= -0.5 else -0.5


def jacobi_mass(a: float, b: float) -> float:
    """Integral of (1-x)^a (1+x)^b over [-1, 1]."""
    return math.exp(
        (a + b + 1.0) * math.log(2.0) + log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(a + b + 2.0)
    )


def jacobi_matrix(a: float, b: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal (length m) and off-diagonal (length m-1) of the orthonormal Jacobi matrix."""
    k = np.arange(m, dtype=float)
    s = 2.0 * k + a + b
    diag = np.empty(m)
    diag[0] = (b - a) / (a + b + 2.0)
    diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2.0))
    k = k[1:]
    s = s[1:]
    off2 = np.empty(m - 1)
    if m > 1:
        off2[0] = 4.0 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        kk, ss = k[1:], s[1:]
        off2[1:] = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (ss * ss * (ss + 1.0) * (ss - 1.0))
    return diag, np.sqrt(off2)


def jacobi_zeros(params: JacobiParams, n: int) -> np.ndarray:
    """Zeros of P_n^{(alpha, beta)} in increasing order."""
    if n == 0:
        return np.empty(0)
    diag, off = jacobi_matrix(params.alpha, params.beta, n)
    if n == 1:
        return diag.copy()
    return eigvalsh_tridiagonal(diag, off, lapack_driver="sterf")


class JacobiPolynomial:
    """P_n^{(alpha, beta)} as a callable with known degree and zeros."""

    def __init__(self, params: JacobiParams, n: int):
        self.params = params
        self.degree = n

    def __call__(self, x):
        return jacobi_eval(self.params, self.degree, x)

    def zeros(self) -> np.ndarray:
        return jacobi_zeros(self.params, self.degree)

    def __repr__(self):
        return f"JacobiPolynomial(alpha={self.params.alpha}, beta={self.params.beta}, n={self.degree})"
