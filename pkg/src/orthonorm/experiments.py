"""Growth exponents of the different-metrics inequality and numerical
experiments that fit them on dyadic degree grids."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .gegenbauer import GegenbauerParams, GegenbauerPolynomial
from .ortho_general import OrthonormalPolynomial, cached_recurrence
from .quad_norms import lp_norm, sup_norm
from .weights import WeightParams

__all__ = [
    "DEFAULT_GRID",
    "ExperimentConfig",
    "SlopeFit",
    "SharpnessReport",
    "nikolskii_exponent",
    "sharpness_exponent",
    "candidate_polynomial",
    "fit_log_slope",
    "norm_of",
    "run_norm_growth",
    "run_sharpness",
    "write_report_csv",
]

DEFAULT_GRID = tuple(2**k for k in range(6, 13))
NORM_TOL = 1e-9
WHICH = ("candidate_p_norm", "candidate_q_norm", "candidate_sup_norm", "candidate_l1_norm")


def _inv(r: float) -> float:
    return 0.0 if r == math.inf else 1.0 / r


@dataclass(frozen=True)
class ExperimentConfig:
    alpha: float
    beta: float
    mu: float
    p: float
    q: float = math.inf
    nu: float | None = None
    n_grid: tuple[int, ...] = DEFAULT_GRID

    def __post_init__(self):
        if not (self.alpha >= self.beta >= -0.5):
            raise DomainError("requires alpha >= beta >= -1/2")
        if not self.mu >= 0:
            raise DomainError("requires mu >= 0")
        if not (1 <= self.p < self.q <= math.inf):
            raise DomainError("requires 1 <= p < q <= inf")
        if self.p == 1:
            if self.nu is None:
                raise DomainError("p = 1 requires nu in (0, 1 - 1/q)")
            if not (0 < self.nu < 1 - _inv(self.q)):
                raise DomainError("requires 0 < nu < 1 - 1/q")
        grid = tuple(int(n) for n in self.n_grid)
        if not grid or grid[0] < 1 or any(b <= a for a, b in zip(grid, grid[1:])):
            raise DomainError("n_grid must be strictly increasing positive degrees")
        object.__setattr__(self, "n_grid", grid)

    @property
    def weight(self) -> WeightParams:
        """The weight whose norms are compared: |x|-exponent is mu."""
        return WeightParams(self.alpha, self.beta, self.mu)

    @property
    def growth(self) -> float:
        return max(2 * (self.alpha + 1), self.mu + 1)


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    stderr: float
    n_used: tuple[int, ...]


@dataclass
class SharpnessReport:
    config: ExperimentConfig
    theory_upper: float
    theory_lower: float
    fitted: SlopeFit
    rows: list[tuple[int, float, float, float]] = field(default_factory=list)

    @property
    def within_bounds(self) -> bool:
        s = self.fitted.slope
        return self.theory_lower - 0.1 <= s <= self.theory_upper + 0.1


def nikolskii_exponent(cfg: ExperimentConfig) -> float:
    return cfg.growth * (_inv(cfg.p) - _inv(cfg.q))


def sharpness_exponent(cfg: ExperimentConfig) -> float:
    if cfg.p > 1:
        return nikolskii_exponent(cfg)
    return cfg.growth * (1 - _inv(cfg.q)) - cfg.nu


def candidate_polynomial(cfg: ExperimentConfig, n: int):
    """The explicit polynomial whose norm ratio attains the lower bound at degree n."""
    shift = cfg.nu if cfg.p == 1 else 0.0
    if cfg.q == math.inf:
        return GegenbauerPolynomial(GegenbauerParams(2 * (cfg.alpha + 1) - shift, cfg.mu + 1 - shift), n)
    fam = WeightParams(
        2 * cfg.alpha + 1.5 - shift,
        2 * cfg.beta + 1.5 - shift,
        2 * cfg.mu + 2 - 2 * shift,
    )
    count = max(n, cfg.n_grid[-1]) + 1
    return OrthonormalPolynomial(cached_recurrence(fam, count), n)


def fit_log_slope(points) -> SlopeFit:
    """Least-squares line through (ln n, ln value)."""
    pts = sorted((int(n), float(v)) for n, v in points)
    if len(pts) < 3:
        raise DomainError("slope fit needs at least 3 points")
    n = np.array([p[0] for p in pts], dtype=float)
    v = np.array([p[1] for p in pts])
    if np.any(n <= 0) or np.any(~(v > 0)) or np.any(np.diff(n) <= 0):
        raise DomainError("slope fit needs increasing positive n and positive values")
    lx, ly = np.log(n), np.log(v)
    xm, ym = lx.mean(), ly.mean()
    sxx = np.sum((lx - xm) ** 2)
    slope = float(np.sum((lx - xm) * (ly - ym)) / sxx)
    intercept = float(ym - slope * xm)
    resid = ly - (intercept + slope * lx)
    dof = len(pts) - 2
    stderr = float(math.sqrt(np.sum(resid**2) / dof / sxx)) if dof > 0 else 0.0
    return SlopeFit(slope, intercept, stderr, tuple(int(k) for k in n))


def norm_of(f, r: float, w: WeightParams, n: int) -> float:
    """L_r(w) norm of f, routing r = inf to the uniform norm."""
    if r == math.inf:
        return sup_norm(f, n)
    return lp_norm(f, r, w, tol=NORM_TOL)


def _map_grid(func, grid, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            vals = list(pool.map(func, grid))
    else:
        vals = [func(n) for n in grid]
    return dict(zip(grid, vals))


def _which_exponent(cfg: ExperimentConfig, which: str) -> float:
    return {
        "candidate_p_norm": cfg.p,
        "candidate_q_norm": cfg.q,
        "candidate_sup_norm": math.inf,
        "candidate_l1_norm": 1.0,
    }[which]


def run_norm_growth(cfg: ExperimentConfig, which: str, workers: int = 1, values: dict | None = None) -> SlopeFit:
    """Fit the growth slope of one norm of the candidate over cfg.n_grid.

    Per-degree norms are written into ``values`` when a dict is passed.
    """
    if which not in WHICH:
        raise DomainError(f"which must be one of {', '.join(WHICH)}")
    if len(cfg.n_grid) < 4:
        raise DomainError("norm growth needs at least 4 degrees")
    r = _which_exponent(cfg, which)
    w = cfg.weight
    # tables are built once, before any parallel evaluation
    candidate_polynomial(cfg, cfg.n_grid[-1])
    got = _map_grid(lambda n: norm_of(candidate_polynomial(cfg, n), r, w, n), cfg.n_grid, workers)
    if values is not None:
        values.update(got)
    return fit_log_slope(sorted(got.items()))


def run_sharpness(cfg: ExperimentConfig, workers: int = 1) -> SharpnessReport:
    """Fit the slope of ||P_n||_q / ||P_n||_p for the candidate sequence."""
    w = cfg.weight
    candidate_polynomial(cfg, cfg.n_grid[-1])

    def one(n):
        f = candidate_polynomial(cfg, n)
        return norm_of(f, cfg.p, w, n), norm_of(f, cfg.q, w, n)

    got = _map_grid(one, cfg.n_grid, workers)
    rows = [(n, np_, nq, nq / np_) for n, (np_, nq) in sorted(got.items())]
    fit = fit_log_slope([(n, ratio) for n, _, _, ratio in rows])
    return SharpnessReport(cfg, nikolskii_exponent(cfg), sharpness_exponent(cfg), fit, rows)


def _g(v: float) -> str:
    return f"{v:.17g}"


def write_report_csv(report: SharpnessReport, path) -> None:
    """Per-degree rows followed by one summary row."""
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["n", "norm_p", "norm_q", "ratio", "slope", "stderr", "theory_upper", "theory_lower"])
        for n, a, b, r in report.rows:
            wr.writerow([n, _g(a), _g(b), _g(r), "", "", "", ""])
        f = report.fitted
        wr.writerow(
            ["summary", "", "", "", _g(f.slope), _g(f.stderr), _g(report.theory_upper), _g(report.theory_lower)]
        )
