import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zernike_derham.errors import ParameterError
from zernike_derham.univariate import (
    JacobiParam,
    gauss_jacobi_rule,
    jacobi_any,
    jacobi_convention_eval,
    jacobi_eval,
    jacobi_poly,
    jacobi_recurrence,
    legendre_eval,
    shifted_jacobi_matrix,
    ultra32_eval,
)


def jacobi_sum(n, a, b, x):
    """Explicit finite-sum form of P_n^{(a,b)} for integer a, b."""
    return sum(
        math.comb(n + a, n - s) * math.comb(n + b, s) * ((x - 1) / 2) ** s * ((x + 1) / 2) ** (n - s)
        for s in range(n + 1)
    )


# ---------------------------------------------------------------- examples


def test_p0_is_one():
    x = np.linspace(-1, 1, 7)
    for a, b in [(0, 0), (1.5, 0.2), (3, 2)]:
        np.testing.assert_array_equal(jacobi_eval(0, a, b, x), np.ones(7))


def test_p1_legendre_value():
    assert jacobi_eval(1, 0, 0, 0.3) == pytest.approx(0.3, abs=1e-15)


def test_endpoint_binomial():
    assert jacobi_eval(2, 1, 0, 1.0) == pytest.approx(3.0, abs=1e-14)
    for n in range(6):
        for a in (0, 1, 2, 3):
            assert jacobi_eval(n, a, 0.5, 1.0) == pytest.approx(math.comb(n + a, n), rel=1e-14)


def test_convention_examples():
    x = np.linspace(-1, 1, 5)
    np.testing.assert_array_equal(jacobi_convention_eval(0, 0.7, -1, x), np.ones(5))
    assert jacobi_convention_eval(1, 0, -1, 1.0) == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_allclose(jacobi_convention_eval(1, 0, -2, x), np.ones(5), atol=1e-15)


def test_legendre_and_ultraspherical_examples():
    z = np.linspace(-1, 1, 9)
    np.testing.assert_allclose(ultra32_eval(0, z), 1.0, atol=1e-15)
    np.testing.assert_allclose(legendre_eval(1, z), z, atol=1e-15)


def test_ultraspherical_derivative_identity():
    # d/dz[(1 - z^2) C_k(z)] = -(k+1)(k+2) P_{k+1}(z), checked through exact polynomial derivatives
    for k in range(6):
        z = np.polynomial.Polynomial([0, 1])
        zs = np.linspace(-0.9, 0.9, 2 * k + 4)
        C = np.polynomial.Polynomial.fit(zs, ultra32_eval(k, zs), k).convert()
        lhs = ((1 - z * z) * C).deriv()
        np.testing.assert_allclose(lhs(zs), -(k + 1) * (k + 2) * legendre_eval(k + 1, zs), atol=1e-10)


def test_quadrature_examples():
    r = gauss_jacobi_rule(1, 0)
    assert r.nodes[0] == pytest.approx(0.5, abs=1e-15)
    assert r.weights[0] == pytest.approx(1.0, abs=1e-15)
    assert gauss_jacobi_rule(2, 0).integrate(lambda t: t * t) == pytest.approx(1 / 3, abs=1e-15)
    # the rule for lambda = 1 already carries the factor (1 - t)
    assert gauss_jacobi_rule(3, 1).integrate(lambda t: np.ones_like(t)) == pytest.approx(0.5, abs=1e-15)


# ---------------------------------------------------------------- errors


@pytest.mark.parametrize("a,b", [(-1, 0), (-1.5, 0.3), (0, -1.5), (0, -3)])
def test_invalid_parameters(a, b):
    with pytest.raises(ParameterError):
        jacobi_eval(2, a, b, 0.1)


def test_jacobi_param_validation():
    assert JacobiParam(0.0, -1).uses_convention
    assert not JacobiParam(0.5, 0.0).uses_convention
    with pytest.raises(ParameterError):
        JacobiParam(-1.0, 0.0)
    with pytest.raises(ParameterError):
        JacobiParam(0.0, -1.5)


def test_convention_requires_minus_one_or_two():
    with pytest.raises(ParameterError):
        jacobi_convention_eval(2, 0.0, -3, 0.1)


def test_quadrature_needs_points():
    with pytest.raises(ParameterError):
        gauss_jacobi_rule(0, 0)


# ---------------------------------------------------------------- invariants


@pytest.mark.parametrize("a", [0, 1, 2])
@pytest.mark.parametrize("b", [0, 1, 2])
def test_recurrence_matches_closed_forms(a, b, rng):
    x = rng.uniform(-1, 1, 100)
    for n in range(4):
        ref = jacobi_sum(n, a, b, x)
        np.testing.assert_allclose(jacobi_eval(n, a, b, x), ref, rtol=1e-14, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(0, 12),
    a=st.integers(0, 4),
    b=st.integers(0, 4),
    x=st.floats(-1, 1, allow_nan=False),
)
def test_recurrence_matches_sum_formula(n, a, b, x):
    ref = jacobi_sum(n, a, b, x)
    assert jacobi_eval(n, a, b, x) == pytest.approx(ref, rel=1e-12, abs=1e-12 * math.comb(n + max(a, b), n))


@pytest.mark.parametrize("lam", [0.0, 0.5, 2.0])
def test_convention_consistency(lam, rng):
    x = rng.uniform(-1, 1, 40)
    for n in range(1, 8):
        ref = (1 + x) * (n + lam) / (2 * n) * jacobi_eval(n - 1, lam, 1, x)
        np.testing.assert_allclose(jacobi_convention_eval(n, lam, -1, x), ref, rtol=1e-14)
        np.testing.assert_allclose(jacobi_any(n, lam, -1, x), ref, rtol=1e-14)
    for n in range(2, 8):
        ref = (n + lam - 1) * (n + lam) / (4 * n * (n - 1)) * (1 + x) ** 2 * jacobi_eval(n - 2, lam, 2, x)
        np.testing.assert_allclose(jacobi_convention_eval(n, lam, -2, x), ref, rtol=1e-14)


def test_convention_accepts_complex_arguments():
    x = np.exp(1j * np.linspace(0, 2, 5))
    v = jacobi_convention_eval(3, 1.0, -1, x)
    assert np.iscomplexobj(v)
    ref = (1 + x) * 4 / 6 * jacobi_eval(2, 1.0, 1, x)
    np.testing.assert_allclose(v, ref, rtol=1e-14)


@pytest.mark.parametrize("lam", [0, 1, 2])
def test_quadrature_exactness(lam):
    for npts in range(1, 9):
        rule = gauss_jacobi_rule(npts, lam)
        assert rule.exactness_degree == 2 * npts - 1
        for k in range(2 * npts):
            exact = math.gamma(k + 1) * math.gamma(lam + 1) / math.gamma(k + lam + 2)
            assert rule.integrate(lambda t: t**k) == pytest.approx(exact, rel=1e-13)


@pytest.mark.parametrize("lam", [0, 1, 2])
@pytest.mark.parametrize("b", [0, 1, 3])
def test_jacobi_orthogonality(lam, b):
    rule = gauss_jacobi_rule(16, lam)
    t = rule.nodes
    P = np.array([jacobi_eval(n, lam, b, 2 * t - 1) for n in range(11)])
    G = np.einsum("iq,jq,q->ij", P, P, rule.weights * t**b)
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) < 1e-12


def test_jacobi_poly_agrees_with_evaluation(rng):
    t = rng.random(20)
    for n in range(7):
        for a, b in [(0, 0), (1, 2), (0.5, 3)]:
            np.testing.assert_allclose(jacobi_poly(n, a, b)(t), jacobi_eval(n, a, b, 2 * t - 1), rtol=1e-10, atol=1e-11)
        for bneg in (-1, -2):
            np.testing.assert_allclose(
                jacobi_poly(n, 1.0, bneg)(t), jacobi_convention_eval(n, 1.0, bneg, 2 * t - 1), rtol=1e-10, atol=1e-11
            )


def test_shifted_multiplication_matrix(rng):
    t = rng.random(15)
    a, b, size = 1.0, 2.0, 8
    J = shifted_jacobi_matrix(a, b, size)
    P = np.array([jacobi_eval(n, a, b, 2 * t - 1) for n in range(size)])
    for n in range(size - 1):
        np.testing.assert_allclose(t * P[n], J[:, n] @ P, atol=1e-13)
    al, be, ga = jacobi_recurrence(3, a, b)
    x = 2 * t - 1
    np.testing.assert_allclose(x * P[3], al * P[4] + be * P[3] + ga * P[2], atol=1e-13)
