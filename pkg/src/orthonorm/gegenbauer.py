"""Orthonormal generalized Gegenbauer polynomials.

``C_n^{(lam, mu)}`` is orthonormal for ``(1 - x^2)^(lam - 1/2) |x|^(2 mu)``
and is written through a Jacobi polynomial evaluated at ``2 x^2 - 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .jacobi import JacobiParams, _check_x, jacobi_eval, jacobi_zeros
from .special import log_gamma

__all__ = [
    "GegenbauerParams",
    "GegenbauerPolynomial",
    "gg_coeff",
    "gg_eval",
    "gg_sup_exponent",
    "gg_quadratic_identity_residual",
]


@dataclass(frozen=True)
class GegenbauerParams:
    lam: float
    mu: float

    def __post_init__(self):
        if not (self.lam > -0.5 and self.mu >= 0):
            raise DomainError(
                f"generalized Gegenbauer parameters require lambda > -1/2 and mu >= 0, got ({self.lam}, {self.mu})"
            )

    def jacobi_params(self, n: int) -> JacobiParams:
        """Jacobi parameters of the factor used for degree n."""
        if n % 2 == 0:
            return JacobiParams(self.lam - 0.5, self.mu - 0.5)
        return JacobiParams(self.lam - 0.5, self.mu + 0.5)


def _log_coeff(lam: float, mu: float, n: int) -> float:
    k, odd = divmod(n, 2)
    if odd:
        num = math.log(2 * k + lam + mu + 1.0) + log_gamma(k + 1.0) + log_gamma(k + lam + mu + 1.0)
        den = log_gamma(k + lam + 0.5) + log_gamma(k + mu + 1.5)
    else:
        num = log_gamma(k + 1.0)
        if k == 0:
            # (lam + mu) Gamma(lam + mu) = Gamma(lam + mu + 1), valid when lam + mu <= 0
            num += log_gamma(lam + mu + 1.0)
        else:
            num += math.log(2 * k + lam + mu) + log_gamma(k + lam + mu)
        den = log_gamma(k + lam + 0.5) + log_gamma(k + mu + 0.5)
    return 0.5 * (num - den)


def gg_coeff(params: GegenbauerParams, n: int) -> float:
    """Normalizing constant in front of the Jacobi factor."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    return math.exp(_log_coeff(params.lam, params.mu, n))


def gg_eval(params: GegenbauerParams, n: int, x):
    if n < 0:
        raise DomainError("degree must be nonnegative")
    arr = _check_x(x)
    t = 2.0 * arr * arr - 1.0
    t = np.clip(t, -1.0, 1.0)
    val = gg_coeff(params, n) * jacobi_eval(params.jacobi_params(n), n // 2, t)
    if n % 2:
        val = arr * val
    return float(val) if np.ndim(val) == 0 else val


def gg_sup_exponent(params: GegenbauerParams) -> float:
    """Exponent s in max |C_n| ~ n^s; mu = 0 uses max(lam, 0)."""
    if params.mu > 0:
        return max(params.lam, params.mu)
    return max(params.lam, 0.0)


def gg_quadratic_identity_residual(lam: float, n: int, x: float) -> float:
    """|C_n^{(lam,0)}(x) - c P_n^{(lam-1/2, lam-1/2)}(x)| for the quadratic transformation.

    The multiplier c is the gamma-ratio that turns the half-degree Jacobi
    polynomial at 2x^2 - 1 into the full-degree symmetric one.
    """
    params = GegenbauerParams(lam, 0.0)
    lhs = gg_eval(params, n, x)
    k, odd = divmod(n, 2)
    if odd:
        log_c = log_gamma(k + lam + 0.5) + log_gamma(2 * k + 2.0) - log_gamma(2 * k + lam + 1.5) - log_gamma(k + 1.0)
    else:
        log_c = log_gamma(k + lam + 0.5) + log_gamma(2 * k + 1.0) - log_gamma(2 * k + lam + 0.5) - log_gamma(k + 1.0)
    rhs = gg_coeff(params, n) * math.exp(log_c) * jacobi_eval(JacobiParams(lam - 0.5, lam - 0.5), n, x)
    return abs(lhs - rhs)


class GegenbauerPolynomial:
    """C_n^{(lam, mu)} as a callable with known degree and zeros."""

    def __init__(self, params: GegenbauerParams, n: int):
        self.params = params
        self.degree = n

    def __call__(self, x):
        return gg_eval(self.params, self.degree, x)

    def zeros(self) -> np.ndarray:
        k, odd = divmod(self.degree, 2)
        t = jacobi_zeros(self.params.jacobi_params(self.degree), k)
        r = np.sqrt(0.5 * (1.0 + t))
        parts = [-r[::-1], r] if not odd else [-r[::-1], [0.0], r]
        return np.concatenate(parts)

    def __repr__(self):
        return f"GegenbauerPolynomial(lam={self.params.lam}, mu={self.params.mu}, n={self.degree})"
