"""Quadrature for generalized Jacobi weights, weighted norms and the piecewise
integrals used to classify growth regimes."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import kernels
from .errors import ConvergenceError, DomainError
from .jacobi import jacobi_mass, jacobi_matrix
from .weights import WeightParams

__all__ = [
    "QuadratureRule",
    "LemmaQuery",
    "gauss_jacobi_rule",
    "composite_weight_rule",
    "panel_rule",
    "weight_mass",
    "lp_norm",
    "sup_norm",
    "lemma_integral",
    "lemma_regime",
    "write_rule_csv",
    "read_rule_csv",
]

MAX_NODES = 2**20
_SNAP = 1e-12
_MAX_PANEL_ORDER = 512


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.nodes.size < 1 or self.nodes.shape != self.weights.shape:
            raise DomainError("a quadrature rule needs matching, nonempty nodes and weights")

    def __len__(self):
        return self.nodes.size

    def integrate(self, f: Callable) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


@lru_cache(maxsize=128)
def _gauss_jacobi(m: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    diag, off = jacobi_matrix(a, b, m)
    mass = jacobi_mass(a, b)
    if m == 1:
        x = diag.copy()
        w = np.array([mass])
    else:
        try:
            x = eigvalsh_tridiagonal(diag, off, lapack_driver="sterf")
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"Jacobi-matrix eigensolve failed for m={m}") from exc
        # Christoffel numbers: w_j = 1 / sum_k p_k(x_j)^2 with p_k orthonormal
        A = 1.0 / off
        B = -diag[:-1] / off
        C = np.zeros(m - 1)
        C[1:] = off[:-1] / off[1:]
        w = 1.0 / kernels.christoffel(A, B, C, 1.0 / math.sqrt(mass), x, m)
        if a == b:
            x = 0.5 * (x - x[::-1])
            w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_jacobi_rule(m: int, a: float, b: float) -> QuadratureRule:
    """m-point Gauss rule for (1-x)^a (1+x)^b on [-1, 1]."""
    if m < 1:
        raise DomainError("node count must be at least 1")
    if not (a > -1 and b > -1):
        raise DomainError("Gauss-Jacobi rule requires a > -1 and b > -1")
    a, b = float(a), float(b)
    if a > b:
        # reflection keeps the cache keyed on a <= b
        x, w = _gauss_jacobi(m, b, a)
        x, w = -x[::-1], w[::-1]
    else:
        x, w = _gauss_jacobi(m, a, b)
    return QuadratureRule(x, w, 2 * m - 1, {"a": a, "b": b})


def panel_rule(breaks, singular: dict[float, float], k: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the integral of g(x) * prod_c |x - c|^e_c over
    [breaks[0], breaks[-1]], one k-point Gauss rule per panel.

    Singular factors are absorbed into a Gauss-Jacobi rule on each panel
    that ends at the singular point and evaluated pointwise elsewhere.
    """
    sing = {float(c): float(e) for c, e in singular.items() if e != 0.0}
    br = np.unique(np.asarray(breaks, dtype=float))
    keep = np.ones(br.size, dtype=bool)
    for c in sing:
        near = np.abs(br - c) < _SNAP
        if near.any():
            keep &= ~near
            br = np.where(near, c, br)
            keep[np.argmax(near)] = True
    br = np.unique(br[keep])
    lo, hi = br[:-1], br[1:]
    ea = np.array([sing.get(float(r), 0.0) for r in hi])
    eb = np.array([sing.get(float(l), 0.0) for l in lo])
    nodes = np.empty((lo.size, k))
    wts = np.empty((lo.size, k))
    for pa, pb in set(zip(ea.tolist(), eb.tolist())):
        sel = (ea == pa) & (eb == pb)
        rule = gauss_jacobi_rule(k, pa, pb)
        half = 0.5 * (hi[sel] - lo[sel])
        nodes[sel] = lo[sel, None] + half[:, None] * (1.0 + rule.nodes[None, :])
        wts[sel] = rule.weights[None, :] * (half ** (1.0 + pa + pb))[:, None]
    for c, e in sing.items():
        absorbed = ((hi == c) | (lo == c))[:, None]
        wts = np.where(absorbed, wts, wts * np.abs(nodes - c) ** e)
    return nodes.ravel(), wts.ravel()


def _smooth_degree(w: WeightParams) -> int:
    # (1+x)^beta on [0, 1] and (1-x)^alpha on [-1, 0] stay in the weights;
    # they are polynomials only for nonnegative integer exponents
    d = 0
    for e in (w.alpha, w.beta):
        if e > 0 and float(e).is_integer():
            d = max(d, int(e))
    return d


def composite_weight_rule(w: WeightParams, m: int) -> QuadratureRule:
    """Rule for the generalized Jacobi weight, split at 0 with m nodes per half.

    The factor not absorbed on each half is multiplied into the weights, so
    exactness drops by its degree when it is a polynomial; otherwise it is
    analytic on the half and the error decays like (3 + sqrt 8)^(-2m).
    """
    if m < 1:
        raise DomainError("node count must be at least 1")
    x, wt = panel_rule([-1.0, 0.0, 1.0], w.singular, m)
    exact = max(2 * m - 1 - _smooth_degree(w), 0)
    return QuadratureRule(x, wt, exact, {"alpha": w.alpha, "beta": w.beta, "gamma": w.gamma})


def weight_mass(w: WeightParams) -> float:
    return float(np.sum(composite_weight_rule(w, 64).weights))


def _abs_pow(v: np.ndarray, p: float) -> np.ndarray:
    v = np.abs(v)
    if p == 1.0:
        return v
    if p == 2.0:
        return v * v
    return v**p


def _breakpoints(f) -> np.ndarray | None:
    zeros = getattr(f, "zeros", None)
    if zeros is None:
        return None
    z = np.asarray(zeros() if callable(zeros) else zeros, dtype=float)
    return z[(z > -1.0) & (z < 1.0)]


def _integrate_doubling(f, p, singular, breaks, k0, tol, what):
    # raise the panel order up to a cap, then bisect panels instead
    prev = None
    k = min(k0, _MAX_PANEL_ORDER)
    breaks = np.asarray(breaks, dtype=float)
    while (len(breaks) - 1) * k <= MAX_NODES:
        x, wt = panel_rule(breaks, singular, k)
        val = float(np.dot(wt, _abs_pow(f(x), p)))
        if prev is not None:
            if val == prev or abs(val - prev) <= 0.5 * tol * p * abs(val):
                return val
        prev = val
        if k < _MAX_PANEL_ORDER:
            k *= 2
        else:
            breaks = np.sort(np.concatenate([breaks, 0.5 * (breaks[:-1] + breaks[1:])]))
    raise ConvergenceError(f"{what} did not converge within {MAX_NODES} nodes")


def lp_norm(f: Callable, p: float, w: WeightParams, tol: float = 1e-9, breakpoints=None) -> float:
    """(integral |f|^p w)^(1/p), refined by node doubling.

    If ``f`` exposes ``zeros()`` (or ``breakpoints`` are given) the interval
    is also split there, so |f|^p is smooth on every panel.
    """
    if p == math.inf:
        return sup_norm(f, getattr(f, "degree", 8))
    if not p >= 1.0:
        raise DomainError("lp_norm requires p >= 1")
    extra = _breakpoints(f) if breakpoints is None else np.asarray(breakpoints, dtype=float)
    breaks = np.array([-1.0, 0.0, 1.0])
    if extra is not None and extra.size:
        breaks = np.union1d(breaks, extra)
        k0 = 8
    else:
        deg = int(getattr(f, "degree", 0))
        k0 = max(32, 1 << int(math.ceil(math.log2(p * deg / 2.0 + 2.0))))
    val = _integrate_doubling(f, p, w.singular, breaks, k0, tol, "lp_norm")
    return val ** (1.0 / p)


def sup_norm(f: Callable, n_hint: int = 8) -> float:
    """max |f| on [-1, 1]: Chebyshev grid of 8 max(n_hint, 8) points plus
    parabolic refinement around the largest local maxima."""
    npts = 8 * max(int(n_hint), 8)
    x = np.cos(np.pi * np.arange(npts) / (npts - 1))[::-1]
    x[0], x[-1] = -1.0, 1.0
    v = np.abs(f(x))
    best = float(v.max())
    interior = np.nonzero((v[1:-1] >= v[:-2]) & (v[1:-1] >= v[2:]))[0] + 1
    if interior.size:
        top = interior[np.argsort(v[interior])[-4:]]
        x0, x1, x2 = x[top - 1], x[top], x[top + 1]
        y0, y1, y2 = v[top - 1], v[top], v[top + 1]
        d01 = (y1 - y0) / (x1 - x0)
        d12 = (y2 - y1) / (x2 - x1)
        curv = (d12 - d01) / (x2 - x0)
        ok = curv < 0
        if ok.any():
            xv = 0.5 * (x0 + x1) - d01 / (2.0 * np.where(ok, curv, -1.0))
            xv = np.clip(xv[ok], x0[ok], x2[ok])
            best = max(best, float(np.abs(f(xv)).max()))
    return best


@dataclass(frozen=True)
class LemmaQuery:
    """One of the three piecewise integrals of |p_n|^p for the family weight.

    ``part`` selects [y2, 1] with (1-x)^t ("right"), [y1, y2] with |x|^t
    ("middle") or [-1, y1] with (1+x)^t ("left"), t = ``tilde_exponent``.
    """

    part: str
    tilde_exponent: float
    p: float
    family: WeightParams
    y1: float = -0.5
    y2: float = 0.5

    def __post_init__(self):
        if self.part not in ("right", "middle", "left"):
            raise DomainError("part must be one of right, middle, left")
        if not self.tilde_exponent > -1:
            raise DomainError("tilde exponent must exceed -1")
        if not self.p >= 1:
            raise DomainError("requires p >= 1")
        if not (-1 < self.y1 < 0 < self.y2 < 1):
            raise DomainError("requires -1 < y1 < 0 < y2 < 1")
        f = self.family
        if not (f.alpha >= -0.5 and f.beta >= -0.5 and f.gamma >= 0):
            raise DomainError("family requires alpha, beta >= -1/2 and gamma >= 0")


def lemma_regime(q: LemmaQuery) -> tuple[str, float]:
    """("constant" | "log" | "power", growth exponent) predicted for the integral."""
    f, t, p = q.family, q.tilde_exponent, q.p
    if q.part == "middle":
        lhs, rhs = 2 * t, p * f.gamma - 2
        s = p * f.gamma / 2 - t - 1
    else:
        e = f.alpha if q.part == "right" else f.beta
        lhs, rhs = 2 * t, p * e - 2 + p / 2
        s = p * e + p / 2 - 2 * t - 2
    if math.isclose(lhs, rhs, rel_tol=0.0, abs_tol=1e-12):
        return "log", 0.0
    if lhs > rhs:
        return "constant", 0.0
    return "power", s


def lemma_integral(q: LemmaQuery, n: int, tol: float = 1e-9) -> float:
    from .ortho_general import cached_recurrence, OrthonormalPolynomial

    table = cached_recurrence(q.family, n + 1)
    poly = OrthonormalPolynomial(table, n)
    if q.part == "right":
        lo, hi, singular = q.y2, 1.0, {1.0: q.tilde_exponent}
    elif q.part == "middle":
        lo, hi, singular = q.y1, q.y2, {0.0: q.tilde_exponent}
    else:
        lo, hi, singular = -1.0, q.y1, {-1.0: q.tilde_exponent}
    z = poly.zeros()
    breaks = np.union1d([lo, hi] + list(singular), z[(z > lo) & (z < hi)])
    breaks = breaks[(breaks >= lo) & (breaks <= hi)]
    return _integrate_doubling(poly, q.p, singular, breaks, 8, tol, "lemma_integral")


def write_rule_csv(rule: QuadratureRule, path) -> None:
    with open(path, "w", newline="") as fh:
        meta = " ".join(f"{k}={v!r}" for k, v in rule.params.items())
        fh.write(f"# {meta} exact_degree={rule.exact_degree}\n")
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["node", "weight"])
        for x, w in zip(rule.nodes, rule.weights):
            wr.writerow([f"{x:.17g}", f"{w:.17g}"])


def read_rule_csv(path) -> QuadratureRule:
    with open(path, newline="") as fh:
        header = fh.readline().lstrip("#").split()
        meta = dict(item.split("=", 1) for item in header)
        rows = list(csv.reader(fh))[1:]
    exact = int(meta.pop("exact_degree"))
    data = np.array(rows, dtype=float).reshape(-1, 2)
    return QuadratureRule(data[:, 0].copy(), data[:, 1].copy(), exact, {k: float(v) for k, v in meta.items()})
