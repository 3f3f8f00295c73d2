import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from orthonorm.errors import DomainError
from orthonorm.jacobi import (
    JacobiParams,
    JacobiPolynomial,
    jacobi_eval,
    jacobi_eval_all,
    jacobi_h,
    jacobi_sup_exponent,
    jacobi_zeros,
)
from orthonorm.quad_norms import gauss_jacobi_rule


def _gram_schmidt_legendre(n):
    x = sp.symbols("x")
    basis = []
    for k in range(n + 1):
        v = x**k
        for b in basis:
            v -= sp.integrate(v * b, (x, -1, 1)) / sp.integrate(b * b, (x, -1, 1)) * b
        basis.append(sp.expand(v))
    return x, basis


def test_degree_zero_is_one():
    assert jacobi_eval(JacobiParams(0, 0), 0, 0.3) == 1.0


def test_legendre_degree_one_matches_gram_schmidt():
    x, basis = _gram_schmidt_legendre(1)
    # Jacobi normalization P_n(1) = 1 for alpha = beta = 0
    ref = float((basis[1] / basis[1].subs(x, 1)).subs(x, sp.Rational(1, 2)))
    assert jacobi_eval(JacobiParams(0, 0), 1, 0.5) == pytest.approx(ref) == pytest.approx(0.5)


def test_legendre_low_degrees_match_gram_schmidt():
    x, basis = _gram_schmidt_legendre(5)
    pts = np.linspace(-1, 1, 7)
    for n, b in enumerate(basis):
        ref = np.array([float((b / b.subs(x, 1)).subs(x, sp.Float(t))) for t in pts])
        assert np.allclose(jacobi_eval(JacobiParams(0, 0), n, pts), ref, rtol=1e-13, atol=1e-14)


def test_endpoint_value():
    # P_n(1) = Gamma(n + alpha + 1) / (Gamma(alpha + 1) Gamma(n + 1)) = 9.0234375
    assert jacobi_eval(JacobiParams(1.5, 0.5), 4, 1.0) == pytest.approx(9.0234375, rel=1e-14)


@pytest.mark.parametrize(
    "ab,n,expected",
    [((0, 0), 0, 2.0), ((1, 0), 0, 2.0), ((0, 0), 3, 2.0 / 7.0)],
)
def test_h_examples(ab, n, expected):
    assert jacobi_h(JacobiParams(*ab), n) == pytest.approx(expected, rel=1e-14)


def test_h_handles_alpha_plus_beta_minus_one():
    assert jacobi_h(JacobiParams(-0.5, -0.5), 0) == pytest.approx(np.pi, rel=1e-14)


@pytest.mark.parametrize(
    "ab,expected", [((2, 0), 2.0), ((-0.5, -0.5), -0.5), ((-0.7, -0.9), -0.5), ((0.1, -0.9), 0.1)]
)
def test_sup_exponent(ab, expected):
    assert jacobi_sup_exponent(JacobiParams(*ab)) == expected


@pytest.mark.parametrize("ab", [(0, 0), (2, 0.5), (-0.5, 1.5), (-0.7, -0.9)])
def test_orthogonality(ab):
    params = JacobiParams(*ab)
    rule = gauss_jacobi_rule(60, *ab)
    P = jacobi_eval_all(params, 40, rule.nodes)
    gram = (P * rule.weights) @ P.T
    h = np.array([jacobi_h(params, n) for n in range(41)])
    scale = np.sqrt(np.outer(h, h))
    off = np.abs(gram - np.diag(np.diag(gram))) / scale
    assert off.max() <= 1e-9
    assert np.allclose(np.diag(gram), h, rtol=1e-10, atol=0)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=-0.95, max_value=5.0),
    st.integers(min_value=0, max_value=100),
    st.floats(min_value=-1.0, max_value=1.0),
)
def test_symmetry(a, n, x):
    p = JacobiParams(a, a)
    lhs = jacobi_eval(p, n, -x)
    rhs = (-1) ** n * jacobi_eval(p, n, x)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12 * max(1.0, abs(jacobi_eval(p, n, 1.0))))


def test_eval_all_matches_eval():
    p = JacobiParams(0.3, 1.7)
    x = np.linspace(-1, 1, 11)
    rows = jacobi_eval_all(p, 12, x)
    for n in range(13):
        assert np.allclose(rows[n], jacobi_eval(p, n, x), rtol=1e-14, atol=1e-14)


def test_zeros_are_roots():
    p = JacobiParams(1.5, -0.5)
    z = jacobi_zeros(p, 20)
    assert z.size == 20 and np.all(np.diff(z) > 0)
    assert np.max(np.abs(JacobiPolynomial(p, 20)(z))) <= 1e-10 * jacobi_eval(p, 20, 1.0)


@pytest.mark.parametrize("ab", [(-1, 0), (0, -1.5)])
def test_invalid_params(ab):
    with pytest.raises(DomainError):
        JacobiParams(*ab)


def test_x_outside_interval():
    with pytest.raises(DomainError):
        jacobi_eval(JacobiParams(0, 0), 3, 1.5)
