"""Acceptance criteria as runnable checks.

Each check returns a :class:`CheckResult`; ``run_suite`` runs the quick or
full set and reports one line per criterion.
"""
from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .experiments import (
    DEFAULT_GRID,
    ExperimentConfig,
    fit_log_slope,
    run_norm_growth,
    run_sharpness,
)
from .gegenbauer import (
    GegenbauerParams,
    GegenbauerPolynomial,
    gg_eval,
    gg_quadratic_identity_residual,
    gg_sup_exponent,
)
from .jacobi import JacobiParams, JacobiPolynomial, jacobi_sup_exponent
from .ortho_general import build_recurrence, ortho_eval, ortho_eval_all
from .quad_norms import (
    LemmaQuery,
    composite_weight_rule,
    gauss_jacobi_rule,
    lemma_integral,
    lemma_regime,
    panel_rule,
    sup_norm,
)
from .special import gamma_ratio
from .weights import WeightParams


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f} s)"


def _timed(number: int, name: str, limit: float | None = None):
    def wrap(fn: Callable[[], tuple[bool, str]]):
        @functools.wraps(fn)
        def run() -> CheckResult:
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if limit is not None and dt > limit:
                ok = False
                detail += f"; runtime {dt:.0f} s exceeds {limit:.0f} s"
            return CheckResult(number, name, ok, detail, dt)

        run.number = number
        return run

    return wrap


@_timed(1, "orthonormality", limit=60)
def orthonormality():
    worst = 0.0
    for w in [(0, 0, 0), (2, 0.5, 1), (-0.5, -0.5, 3), (0.5, 0.5, 2)]:
        weight = WeightParams(*w)
        table = build_recurrence(weight, 101)
        # panels and node count differ from the construction rule
        x, wt = panel_rule([-1.0, -0.6, -0.2, 0.0, 0.3, 0.7, 1.0], weight.singular, 160)
        P = ortho_eval_all(table, 100, x)
        gram = (P * wt) @ P.T
        worst = max(worst, float(np.max(np.abs(gram - np.eye(101)))))
    return worst <= 1e-8, f"max |<p_n,p_m> - delta| = {worst:.2e} (tol 1e-8)"


@_timed(2, "closed-form equivalence")
def closed_form():
    x = np.linspace(-1.0, 1.0, 1001)
    worst = 0.0
    for lam, mu in [(1, 2), (0.5, 0), (3, 0.5)]:
        table = build_recurrence(WeightParams(lam - 0.5, lam - 0.5, 2 * mu), 101)
        params = GegenbauerParams(lam, mu)
        for n in range(101):
            g = gg_eval(params, n, x)
            scale = sup_norm(GegenbauerPolynomial(params, n), n)
            worst = max(worst, float(np.max(np.abs(g - ortho_eval(table, n, x)))) / scale)
    return worst <= 1e-8, f"max relative sup difference {worst:.2e} (tol 1e-8)"


@_timed(3, "quadratic transformation identity")
def quadratic_identity():
    x = np.linspace(-1.0, 1.0, 200)
    worst = 0.0
    for lam in (0.75, 1.0, 2.0):
        for n in range(51):
            for xi in x:
                r = gg_quadratic_identity_residual(lam, n, xi)
                lhs = gg_eval(GegenbauerParams(lam, 0.0), n, xi)
                worst = max(worst, r / max(1.0, abs(lhs)))
    return worst <= 1e-10, f"max relative residual {worst:.2e} (tol 1e-10)"


def _sup_slope(poly_factory) -> float:
    return fit_log_slope([(n, sup_norm(poly_factory(n), n)) for n in DEFAULT_GRID]).slope


@_timed(4, "Jacobi uniform-norm growth", limit=120)
def jacobi_growth():
    parts, ok = [], True
    for ab in [(2, 0), (0.5, -0.5), (-0.7, -0.9)]:
        params = JacobiParams(*ab)
        s = _sup_slope(lambda n: JacobiPolynomial(params, n))
        target = jacobi_sup_exponent(params)
        ok &= abs(s - target) <= 0.05
        parts.append(f"{ab}: {s:.4f} vs {target:g}")
    return ok, "; ".join(parts) + " (tol 0.05)"


@_timed(5, "generalized Gegenbauer uniform-norm growth")
def gegenbauer_growth():
    parts, ok = [], True
    for lm in [(3, 1), (1, 2.5), (2, 0)]:
        params = GegenbauerParams(*lm)
        s = _sup_slope(lambda n: GegenbauerPolynomial(params, n))
        target = gg_sup_exponent(params)
        ok &= abs(s - target) <= 0.05
        parts.append(f"{lm}: {s:.4f} vs {target:g}")
    return ok, "; ".join(parts) + " (tol 0.05)"


@_timed(6, "candidate L_p-norm growth", limit=600)
def lp_growth():
    parts, ok = [], True
    for abm in [(0, 0, 0), (-0.5, -0.5, 3)]:
        for p in (2, 4):
            cfg = ExperimentConfig(*abm, p=p, q=2 * p)
            s = run_norm_growth(cfg, "candidate_p_norm").slope
            target = cfg.growth * (1 - 1 / p)
            ok &= abs(s - target) <= 0.1
            parts.append(f"{abm} p={p}: {s:.4f} vs {target:g}")
    return ok, "; ".join(parts) + " (tol 0.1)"


@_timed(7, "shifted candidate L_1 and uniform growth")
def l1_growth():
    cfg = ExperimentConfig(0, 0, 0, p=1, q=math.inf, nu=0.3)
    s1 = run_norm_growth(cfg, "candidate_l1_norm").slope
    sinf = run_norm_growth(cfg, "candidate_sup_norm").slope
    target = cfg.growth - cfg.nu
    ok = abs(s1) <= 0.1 and abs(sinf - target) <= 0.1
    return ok, f"L1 slope {s1:.4f} vs 0; sup slope {sinf:.4f} vs {target:g} (tol 0.1)"


@_timed(8, "sharpness of the different-metrics inequality", limit=1200)
def sharpness():
    parts, ok = [], True
    for abm in [(0, 0, 0), (-0.5, -0.5, 3)]:
        for p, q, nu in [(2, 4, None), (2, math.inf, None), (1, 2, 0.3), (1, math.inf, 0.3)]:
            rep = run_sharpness(ExperimentConfig(*abm, p=p, q=q, nu=nu))
            ok &= rep.within_bounds
            parts.append(
                f"{abm} ({p},{q:g}): {rep.fitted.slope:.3f} in [{rep.theory_lower - 0.1:.2f}, {rep.theory_upper + 0.1:.2f}]"
            )
    return ok, "; ".join(parts)


LEMMA_CASES = [
    ("right", 0.5, 2.0, (0.5, 0.5, 0.0)),
    ("right", 0.0, 2.0, (0.5, 0.5, 0.0)),
    ("right", -0.5, 2.0, (0.5, 0.5, 0.0)),
    ("middle", 2.0, 2.0, (0.5, 0.5, 2.0)),
    ("middle", 1.0, 2.0, (0.5, 0.5, 2.0)),
    ("middle", 0.0, 2.0, (0.5, 0.5, 2.0)),
    ("left", 1.0, 3.0, (1.0, 0.5, 0.0)),
    ("left", 0.5, 3.0, (1.0, 0.5, 0.0)),
    ("left", -0.5, 3.0, (1.0, 0.5, 0.0)),
]


def lemma_prediction(q: LemmaQuery, n: int = 512) -> float:
    regime, s = lemma_regime(q)
    if regime == "constant":
        return 1.0
    if regime == "log":
        return math.log(2 * n) / math.log(n)
    return 2.0**s


@_timed(9, "piecewise-integral regimes")
def lemma_regimes():
    parts, ok = [], True
    seen = set()
    for part, tilde, p, fam in LEMMA_CASES:
        q = LemmaQuery(part, tilde, p, WeightParams(*fam))
        regime, _ = lemma_regime(q)
        seen.add((part, regime))
        ratio = lemma_integral(q, 1024) / lemma_integral(q, 512)
        pred = lemma_prediction(q)
        good = abs(ratio / pred - 1) <= 0.3
        ok &= good
        parts.append(f"{part}/{regime}: {ratio:.3f} vs {pred:.3f}")
    ok &= len(seen) == 9
    return ok, "; ".join(parts) + " (tol 30%)"


def _beta_moment(k: int, a: float, b: float, mp) -> tuple:
    """Exact moment of x^k and |x|^k against (1-x)^a (1+x)^b."""
    a, b = mp.mpf(a), mp.mpf(b)
    pos = mp.beta(k + 1, a + 1) * mp.hyp2f1(-b, k + 1, k + a + 2, -1)
    neg = mp.beta(k + 1, b + 1) * mp.hyp2f1(-a, k + 1, k + b + 2, -1)
    return pos + (-1) ** k * neg, pos + neg


@_timed(10, "oracle suites")
def oracles():
    import mpmath as mp

    mp.mp.dps = 50
    rng = np.random.default_rng(20161)
    worst_g = 0.0
    for _ in range(100):
        n = int(10 ** rng.uniform(0, 6))
        a, b = rng.uniform(-0.9, 10.0, size=2)
        ref = mp.exp(mp.loggamma(n + mp.mpf(a)) - mp.loggamma(n + mp.mpf(b)))
        worst_g = max(worst_g, float(abs(gamma_ratio(n, a, b) / ref - 1)))
    worst_q = 0.0
    for m, a, b in [(5, 1.0, 0.5), (12, -0.5, 2.0), (20, 0.3, -0.7), (33, 2.5, 2.5)]:
        rule = gauss_jacobi_rule(m, a, b)
        for k in range(2 * m):
            exact, scale = _beta_moment(k, a, b, mp)
            got = float(np.dot(rule.weights, rule.nodes**k))
            worst_q = max(worst_q, float(abs(got - exact) / scale))
    for w, m in [((1.0, 0.0, 2.0), 8), ((2.0, 0.5, 1.0), 16), ((-0.5, -0.5, 3.0), 12)]:
        rule = composite_weight_rule(WeightParams(*w), m)
        for k in range(rule.exact_degree + 1):
            exact, scale = _composite_moment(k, WeightParams(*w), mp)
            got = float(np.dot(rule.weights, rule.nodes**k))
            worst_q = max(worst_q, float(abs(got - exact) / scale))
    grid = DEFAULT_GRID
    worst_s = 0.0
    for s in (-1.5, 0.0, 0.5, 2.0, 3.7):
        fit = fit_log_slope([(n, 3.0 * n**s) for n in grid])
        worst_s = max(worst_s, abs(fit.slope - s))
    ok = worst_g <= 1e-12 and worst_q <= 1e-11 and worst_s <= 1e-12
    return ok, (
        f"gamma ratio {worst_g:.1e} (tol 1e-12); quadrature moments {worst_q:.1e} (tol 1e-11); "
        f"slope fit {worst_s:.1e} (tol 1e-12)"
    )


def _composite_moment(k: int, w: WeightParams, mp) -> tuple:
    al, be, ga = (mp.mpf(v) for v in w.as_tuple())
    c = k + ga + 1
    pos = mp.beta(c, al + 1) * mp.hyp2f1(-be, c, c + al + 1, -1)
    neg = mp.beta(c, be + 1) * mp.hyp2f1(-al, c, c + be + 1, -1)
    return pos + (-1) ** k * neg, pos + neg


ALL = [
    orthonormality,
    closed_form,
    quadratic_identity,
    jacobi_growth,
    gegenbauer_growth,
    lp_growth,
    l1_growth,
    sharpness,
    lemma_regimes,
    oracles,
]
QUICK = [orthonormality, closed_form, quadratic_identity, jacobi_growth, gegenbauer_growth, lemma_regimes, oracles]


def run_suite(suite: str = "quick", echo: Callable[[str], None] | None = None) -> list[CheckResult]:
    checks = ALL if suite == "all" else QUICK
    results = []
    for check in checks:
        res = check()
        if echo is not None:
            echo(res.line())
        results.append(res)
    return results
