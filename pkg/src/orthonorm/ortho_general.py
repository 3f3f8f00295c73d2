"""Orthonormal polynomials for the generalized Jacobi weight.

The recurrence coefficients are computed by the Stieltjes procedure on a
discretization of the weight whose singular factors are absorbed into
Gauss-Jacobi rules on [-1, 0] and [0, 1].
"""
from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import kernels
from .errors import ConvergenceError, DomainError
from .quad_norms import composite_weight_rule
from .weights import WeightParams

__all__ = [
    "WeightParams",
    "RecurrenceTable",
    "OrthonormalPolynomial",
    "build_recurrence",
    "ortho_eval",
    "ortho_eval_all",
    "cached_recurrence",
    "write_recurrence_csv",
    "read_recurrence_csv",
    "MAX_COUNT",
]

log = logging.getLogger(__name__)

MAX_COUNT = 8192
STABLE_RTOL = 1e-12
_MAX_HALF_NODES = 1 << 16
CACHE_ENV = "ORTHONORM_CACHE_DIR"


@dataclass(frozen=True, eq=False)
class RecurrenceTable:
    """p_{k+1} = ((x - a_k) p_k - b_{k-1} p_{k-1}) / b_k with p_0 = 1 / sqrt(b0)."""

    weight: WeightParams
    a: np.ndarray
    b: np.ndarray
    b0: float

    def __post_init__(self):
        if self.a.shape != self.b.shape or self.a.size < 1:
            raise DomainError("recurrence arrays must be nonempty and of equal length")
        if not np.all(self.b > 0) or not self.b0 > 0:
            raise DomainError("recurrence off-diagonal coefficients must be positive")
        for arr in (self.a, self.b):
            arr.flags.writeable = False

    def __len__(self):
        return self.a.size

    def truncated(self, count: int) -> "RecurrenceTable":
        if count > len(self):
            raise IndexError(f"table holds {len(self)} coefficients, {count} requested")
        return RecurrenceTable(self.weight, self.a[:count].copy(), self.b[:count].copy(), self.b0)

    def coefficients(self, n: int):
        """(A, B, C, y0) for the generic three-term kernels, first n steps."""
        b = self.b[: max(n, 1)]
        A = 1.0 / b
        B = -self.a[: max(n, 1)] / b
        C = np.zeros_like(b)
        C[1:] = self.b[: b.size - 1] / b[1:]
        return A, B, C, 1.0 / math.sqrt(self.b0)


def _stieltjes(w: WeightParams, count: int, m: int):
    rule = composite_weight_rule(w, m)
    a, b, ref, status, mass = kernels.stieltjes(rule.nodes, rule.weights, count)
    if status >= 0:
        raise ConvergenceError(f"recurrence coefficient b_{status} is nonpositive (m={m} nodes per half)")
    lost = np.nonzero(b <= 1e-13 * ref)[0]
    if lost.size:
        raise ConvergenceError(f"b_{lost[0]} lost all significant digits (m={m} nodes per half)")
    if w.symmetric:
        a = np.zeros_like(a)
    return a, b, mass


def build_recurrence(w: WeightParams, count: int) -> RecurrenceTable:
    """Recurrence coefficients a_k, b_k for k < count.

    The node count per half starts at max(2 count, 256) and doubles until
    two successive levels agree to ``STABLE_RTOL``.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    if count > MAX_COUNT:
        raise DomainError(f"count {count} exceeds the double-precision cap {MAX_COUNT}")
    m = max(2 * count, 256)
    prev = _stieltjes(w, count, m)
    while True:
        m *= 2
        if m > _MAX_HALF_NODES:
            raise ConvergenceError("recurrence coefficients did not stabilize")
        cur = _stieltjes(w, count, m)
        da = np.max(np.abs(cur[0] - prev[0]))
        db = np.max(np.abs(cur[1] - prev[1]) / cur[1])
        dm = abs(cur[2] - prev[2]) / cur[2]
        if max(da, db, dm) <= STABLE_RTOL:
            break
        log.debug("weight %s count %d: m=%d not yet stable (%.2e)", w, count, m, max(da, db, dm))
        prev = cur
    a, b, mass = cur
    return RecurrenceTable(w, a, b, float(mass))


def _check_degree(table: RecurrenceTable, n: int):
    if not 0 <= n < len(table):
        raise IndexError(f"degree {n} outside table of length {len(table)}")


def ortho_eval(table: RecurrenceTable, n: int, x):
    """p_n(x) for the table's weight."""
    _check_degree(table, n)
    arr = np.asarray(x, dtype=float)
    if np.any(~(np.abs(arr) <= 1.0)):
        raise DomainError("x must lie in [-1, 1]")
    A, B, C, y0 = table.coefficients(n)
    out = kernels.recur(A, B, C, y0, np.ascontiguousarray(arr.ravel()), n).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def ortho_eval_all(table: RecurrenceTable, n: int, x) -> np.ndarray:
    """Rows p_0(x), ..., p_n(x)."""
    _check_degree(table, n)
    arr = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)).ravel())
    A, B, C, y0 = table.coefficients(max(n, 1))
    return kernels.recur_all(A, B, C, y0, arr, n)


class OrthonormalPolynomial:
    """p_n of a recurrence table as a callable with known degree and zeros."""

    def __init__(self, table: RecurrenceTable, n: int):
        _check_degree(table, n)
        self.table = table
        self.degree = n

    def __call__(self, x):
        return ortho_eval(self.table, self.degree, x)

    def zeros(self) -> np.ndarray:
        n = self.degree
        if n == 0:
            return np.empty(0)
        if n == 1:
            return self.table.a[:1].copy()
        return eigvalsh_tridiagonal(self.table.a[:n], self.table.b[: n - 1], lapack_driver="sterf")

    def __repr__(self):
        return f"OrthonormalPolynomial(weight={self.table.weight.as_tuple()}, n={self.degree})"


def write_recurrence_csv(table: RecurrenceTable, path) -> None:
    w = table.weight
    with open(path, "w", newline="") as fh:
        fh.write(f"# alpha={w.alpha!r} beta={w.beta!r} gamma={w.gamma!r} b0={table.b0!r}\n")
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["k", "a_k", "b_k"])
        for k, (ak, bk) in enumerate(zip(table.a, table.b)):
            wr.writerow([k, f"{ak:.17g}", f"{bk:.17g}"])


def read_recurrence_csv(path) -> RecurrenceTable:
    with open(path, newline="") as fh:
        meta = dict(item.split("=", 1) for item in fh.readline().lstrip("#").split())
        rows = list(csv.reader(fh))[1:]
    data = np.array([r[1:] for r in rows], dtype=float).reshape(-1, 2)
    w = WeightParams(float(meta["alpha"]), float(meta["beta"]), float(meta["gamma"]))
    return RecurrenceTable(w, data[:, 0].copy(), data[:, 1].copy(), float(meta["b0"]))


_memory: dict[tuple[float, float, float], RecurrenceTable] = {}


def _cache_path(w: WeightParams, count: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = "_".join(f"{v:.12g}" for v in w.as_tuple())
    return Path(root) / f"recurrence_{key}_{count}.csv"


def cached_recurrence(w: WeightParams, count: int) -> RecurrenceTable:
    """build_recurrence with an in-process cache and, when ORTHONORM_CACHE_DIR
    is set, an on-disk CSV cache keyed by (alpha, beta, gamma, count)."""
    key = w.as_tuple()
    hit = _memory.get(key)
    if hit is not None and len(hit) >= count:
        return hit if len(hit) == count else hit.truncated(count)
    path = _cache_path(w, count)
    if path is not None and path.exists():
        table = read_recurrence_csv(path)
    else:
        table = build_recurrence(w, count)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            write_recurrence_csv(table, path)
    if hit is None or len(table) > len(hit):
        _memory[key] = table
    return table
