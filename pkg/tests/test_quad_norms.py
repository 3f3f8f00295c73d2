import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthonorm.errors import ConvergenceError, DomainError
from orthonorm.gegenbauer import GegenbauerParams, GegenbauerPolynomial
from orthonorm.jacobi import JacobiParams, JacobiPolynomial
from orthonorm.quad_norms import (
    LemmaQuery,
    composite_weight_rule,
    gauss_jacobi_rule,
    lemma_integral,
    lemma_regime,
    lp_norm,
    read_rule_csv,
    sup_norm,
    weight_mass,
    write_rule_csv,
)
from orthonorm.weights import WeightParams


def _jacobi_moment(k, a, b):
    # integral of x^k (1-x)^a (1+x)^b over [-1, 1], via 2F1 at 50 digits
    with mpmath.workdps(50):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        total = mpmath.mpf(0)
        for j in range(k + 1):
            # x = (1 + x) - 1, expanded binomially
            total += mpmath.binomial(k, j) * (-1) ** (k - j) * mpmath.mpf(2) ** (a + b + j + 1) * mpmath.beta(a + 1, b + j + 1)
        return float(total)


def _omega_moment(k, w, absolute=False):
    with mpmath.workdps(40):
        g = abs if absolute else (lambda t: t)
        f = lambda t: g(t) ** k * (1 - t) ** w.alpha * (1 + t) ** w.beta * abs(t) ** w.gamma
        return float(mpmath.quad(f, [-1, 0, 1]))


def test_gauss_small_rules():
    r = gauss_jacobi_rule(1, 0, 0)
    assert r.nodes[0] == pytest.approx(0, abs=1e-16) and r.weights[0] == pytest.approx(2, rel=1e-15)
    r = gauss_jacobi_rule(2, 0, 0)
    assert np.allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15)
    assert np.allclose(r.weights, [1, 1], rtol=1e-14)


def test_gauss_moment_against_oracle():
    r = gauss_jacobi_rule(5, 1, 0.5)
    assert r.integrate(lambda x: x**9) == pytest.approx(_jacobi_moment(9, 1, 0.5), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=1, max_value=30),
    st.floats(min_value=-0.9, max_value=4.0),
    st.floats(min_value=-0.9, max_value=4.0),
)
def test_gauss_exactness(m, a, b):
    r = gauss_jacobi_rule(m, a, b)
    k = 2 * m - 1
    ref = _jacobi_moment(k, a, b)
    scale = _jacobi_moment(0, a, b)
    assert abs(r.integrate(lambda x: x**k) - ref) <= 1e-11 * scale


def test_gauss_invalid():
    with pytest.raises(DomainError):
        gauss_jacobi_rule(0, 0, 0)
    with pytest.raises(DomainError):
        gauss_jacobi_rule(3, -1, 0)


def test_composite_masses():
    assert composite_weight_rule(WeightParams(0, 0, 0), 4).integrate(np.ones_like) == pytest.approx(2, abs=1e-13)
    assert composite_weight_rule(WeightParams(0, 0, 1), 4).integrate(np.ones_like) == pytest.approx(1, abs=1e-13)


def test_composite_second_moment():
    w = WeightParams(1, 0, 2)
    rule = composite_weight_rule(w, 8)
    assert rule.integrate(lambda x: x**2) == pytest.approx(_omega_moment(2, w), rel=1e-12)


@pytest.mark.parametrize(
    "w,m", [(WeightParams(0, 0, 2), 8), (WeightParams(1, 0, 2), 8), (WeightParams(2, 0.5, 1), 10),
            (WeightParams(-0.5, -0.5, 3), 12)]
)
def test_composite_exactness(w, m):
    # a non-polynomial leftover factor converges geometrically, hence m=12 for (1+x)^-1/2
    rule = composite_weight_rule(w, m)
    assert rule.exact_degree >= 2 * m - 1 - 2
    for k in range(rule.exact_degree + 1):
        ref = _omega_moment(k, w)
        scale = _omega_moment(k, w, absolute=True)
        assert abs(rule.integrate(lambda x: x**k) - ref) <= 1e-11 * scale


def test_composite_geometric_convergence():
    w = WeightParams(-0.5, -0.5, 3)
    err = [abs(composite_weight_rule(w, m).integrate(np.ones_like) - 4 / 3) for m in (2, 4, 6)]
    assert err[0] > err[1] > err[2] and err[2] < 1e-10


def test_weight_mass():
    assert weight_mass(WeightParams(0, 0, 0)) == pytest.approx(2)
    assert weight_mass(WeightParams(2, 0.5, 1)) == pytest.approx(_omega_moment(0, WeightParams(2, 0.5, 1)), rel=1e-13)


def test_lp_norm_examples():
    assert lp_norm(np.ones_like, 1, WeightParams(0, 0, 0)) == pytest.approx(2, rel=1e-12)
    assert lp_norm(np.ones_like, 2, WeightParams(0, 0, 1)) == pytest.approx(1, rel=1e-12)


@pytest.mark.parametrize("lm,n", [((1, 2), 7), ((0.5, 0), 40), ((3, 0.5), 101)])
def test_lp_norm_of_orthonormal_family(lm, n):
    lam, mu = lm
    f = GegenbauerPolynomial(GegenbauerParams(lam, mu), n)
    assert lp_norm(f, 2, WeightParams(lam - 0.5, lam - 0.5, 2 * mu)) == pytest.approx(1, abs=1e-8)


def test_lp_norm_fractional_power():
    # integral |x|^1.5 |x| dx = 2 / 3.5
    val = lp_norm(lambda x: x, 1.5, WeightParams(0, 0, 1), breakpoints=[0.0])
    assert val == pytest.approx((2 / 3.5) ** (1 / 1.5), rel=1e-9)


def test_lp_norm_rejects_small_p():
    with pytest.raises(DomainError):
        lp_norm(np.ones_like, 0.5, WeightParams(0, 0, 0))


def test_lp_norm_reports_non_convergence():
    # a discontinuous integrand never settles
    with pytest.raises(ConvergenceError):
        lp_norm(lambda x: np.where(x > 1 / math.pi, 1.0, 0.0), 1, WeightParams(0, 0, 0), tol=1e-15)


@pytest.mark.parametrize("w", [WeightParams(0, 0, 0), WeightParams(2, 0.5, 1), WeightParams(-0.5, -0.5, 3)])
@pytest.mark.parametrize("pq", [(1, 2), (2, 3.5), (1.5, 6)])
def test_holder_monotonicity(w, pq):
    p, q = pq
    f = JacobiPolynomial(JacobiParams(0.5, -0.25), 9)
    lhs = lp_norm(f, p, w)
    rhs = weight_mass(w) ** (1 / p - 1 / q) * lp_norm(f, q, w)
    assert lhs <= rhs * (1 + 1e-8)


@pytest.mark.parametrize("f", [JacobiPolynomial(JacobiParams(0, 0), 4), GegenbauerPolynomial(GegenbauerParams(1, 1), 8)])
def test_high_p_approaches_sup(f):
    # |x| has unit mass, so the L_p norms increase towards the sup norm
    w = WeightParams(0, 0, 1)
    s = sup_norm(f, 8)
    v32, v64 = lp_norm(f, 32, w), lp_norm(f, 64, w)
    assert v32 < v64 <= s * (1 + 1e-12)
    assert v64 >= 0.9 * s


def test_sup_norm_examples():
    assert sup_norm(np.ones_like) == 1.0
    assert sup_norm(lambda x: 2 * x**2 - 1, 2) == pytest.approx(1, rel=1e-12)
    for n in (1, 5, 17, 60):
        assert sup_norm(JacobiPolynomial(JacobiParams(0, 0), n), n) == pytest.approx(1, rel=1e-12)


def test_sup_norm_interior_maximum():
    # peak at 1/pi, between grid points
    f = lambda x: 1 - (x - 1 / math.pi) ** 2
    assert sup_norm(f, 8) == pytest.approx(1, rel=1e-6)


def test_lemma_middle_constant():
    q = LemmaQuery("middle", 0.0, 2, WeightParams(0, 0, 0))
    assert lemma_integral(q, 0) == pytest.approx(0.5, rel=1e-12)


@pytest.mark.parametrize("tilde,expected", [(0.5, 1.0), (-0.5, 2.0)])
def test_lemma_right_ratios(tilde, expected):
    q = LemmaQuery("right", tilde, 2, WeightParams(0.5, 0.5, 0))
    ratio = lemma_integral(q, 512) / lemma_integral(q, 256)
    assert abs(ratio / expected - 1) <= 0.25


@pytest.mark.parametrize(
    "part,tilde,fam,p,regime,s",
    [
        ("right", 0.5, (0.5, 0.5, 0), 2, "constant", 0.0),
        ("right", 0.0, (0.5, 0.5, 0), 2, "log", 0.0),
        ("right", -0.5, (0.5, 0.5, 0), 2, "power", 1.0),
        ("middle", 2.0, (0.5, 0.5, 2), 2, "constant", 0.0),
        ("middle", 1.0, (0.5, 0.5, 2), 2, "log", 0.0),
        ("middle", 0.0, (0.5, 0.5, 2), 2, "power", 1.0),
        ("left", 0.5, (1, 0.5, 0), 3, "log", 0.0),
    ],
)
def test_lemma_regime(part, tilde, fam, p, regime, s):
    got = lemma_regime(LemmaQuery(part, tilde, p, WeightParams(*fam)))
    assert got[0] == regime and got[1] == pytest.approx(s)


@pytest.mark.parametrize(
    "kw",
    [
        dict(part="top", tilde_exponent=0, p=2),
        dict(part="left", tilde_exponent=-1, p=2),
        dict(part="left", tilde_exponent=0, p=0.5),
        dict(part="left", tilde_exponent=0, p=2, y1=0.1),
    ],
)
def test_lemma_query_validation(kw):
    with pytest.raises(DomainError):
        LemmaQuery(family=WeightParams(0, 0, 0), **kw)


def test_rule_csv_round_trip(tmp_path):
    rule = gauss_jacobi_rule(12, -0.5, 2)
    path = tmp_path / "rule.csv"
    write_rule_csv(rule, path)
    back = read_rule_csv(path)
    assert np.array_equal(back.nodes, rule.nodes) and np.array_equal(back.weights, rule.weights)
    assert back.exact_degree == rule.exact_degree
