"""Univariate Jacobi-type kernels and Gauss-Jacobi quadrature.

Everything here works elementwise on numpy arrays, and complex arguments
are accepted: the recurrences are plain polynomial arithmetic, which the
coefficient-recovery code in :mod:`zernike_derham.diskbases` relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.linalg import eigh_tridiagonal

from .errors import ParameterError


@dataclass(frozen=True)
class JacobiParam:
    """Jacobi parameters (a, b).

    ``b`` may be exactly -1 or -2, in which case the series-expansion
    conventions of :func:`jacobi_convention_eval` apply.
    """

    a: float
    b: float

    def __post_init__(self):
        if not self.a > -1:
            raise ParameterError(f"Jacobi parameter a={self.a} must exceed -1")
        if not (self.b > -1 or self.b in (-1, -2)):
            raise ParameterError(f"Jacobi parameter b={self.b} must exceed -1 or be -1/-2")

    @property
    def uses_convention(self) -> bool:
        return self.b in (-1, -2)


def _check_ab(n: int, a: float, b: float) -> None:
    if n < 0:
        raise ParameterError(f"degree must be nonnegative, got {n}")
    if not a > -1:
        raise ParameterError(f"Jacobi parameter a={a} must exceed -1")
    if not b > -1:
        raise ParameterError(f"Jacobi parameter b={b} must exceed -1 (use jacobi_convention_eval)")


def jacobi_eval(n: int, a: float, b: float, x):
    """P_n^{(a,b)}(x) by the forward three-term recurrence."""
    _check_ab(n, a, b)
    x = np.asarray(x)
    p_prev = np.ones_like(x, dtype=np.result_type(x, float))
    if n == 0:
        return p_prev
    p = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * (a * a - b * b)
        c3 = (s + 1) * (s + 2) * s
        c4 = 2 * (k + a) * (k + b) * (s + 2)
        p_prev, p = p, ((c2 + c3 * x) * p - c4 * p_prev) / c1
    return p


def jacobi_convention_eval(n: int, lam: float, bneg: int, x):
    """Jacobi polynomial with second parameter -1 or -2.

    For ``bneg = -1``: P_0 = 1 and P_n = (1+x)(n+lam)/(2n) P_{n-1}^{(lam,1)}.
    For ``bneg = -2``: P_0 = 1, P_1 = (2+lam+lam x)/2 and
    P_n = (n+lam-1)(n+lam)/(4n(n-1)) (1+x)^2 P_{n-2}^{(lam,2)} for n > 1.
    """
    if n < 0:
        raise ParameterError(f"degree must be nonnegative, got {n}")
    x = np.asarray(x)
    if bneg == -1:
        if n == 0:
            return np.ones_like(x, dtype=np.result_type(x, float))
        return (1 + x) * (n + lam) / (2 * n) * jacobi_eval(n - 1, lam, 1, x)
    if bneg == -2:
        if n == 0:
            return np.ones_like(x, dtype=np.result_type(x, float))
        if n == 1:
            return (2 + lam + lam * x) / 2
        coef = (n + lam - 1) * (n + lam) / (4 * n * (n - 1))
        return coef * (1 + x) ** 2 * jacobi_eval(n - 2, lam, 2, x)
    raise ParameterError(f"convention parameter must be -1 or -2, got {bneg}")


def jacobi_any(n: int, a: float, b: float, x):
    """Dispatch to the plain recurrence or the negative-b convention."""
    if b in (-1, -2):
        return jacobi_convention_eval(n, a, int(b), x)
    return jacobi_eval(n, a, b, x)


def legendre_eval(n: int, z):
    return jacobi_eval(n, 0.0, 0.0, z)


def ultra32_eval(n: int, z):
    """Ultraspherical C_n^{(3/2)}(z) = (n+2)/2 P_n^{(1,1)}(z).

    This is the normalisation for which
    d/dz[(1 - z^2) C_n^{(3/2)}(z)] = -(n+1)(n+2) P_{n+1}(z).
    """
    return (n + 2) / 2.0 * jacobi_eval(n, 1.0, 1.0, z)


def jacobi_recurrence(n: int, a: float, b: float) -> tuple[float, float, float]:
    """Coefficients (alpha, beta, gamma) of x P_n = alpha P_{n+1} + beta P_n + gamma P_{n-1}."""
    if n == 0:
        return 2.0 / (a + b + 2), (b - a) / (a + b + 2), 0.0
    s = 2 * n + a + b
    alpha = 2 * (n + 1) * (n + a + b + 1) / ((s + 1) * (s + 2))
    beta = (b * b - a * a) / (s * (s + 2))
    gamma = 2 * (n + a) * (n + b) / (s * (s + 1))
    return alpha, beta, gamma


def shifted_jacobi_matrix(a: float, b: float, size: int) -> np.ndarray:
    """Matrix J of multiplication by t on {P_n^{(a,b)}(2t-1)}, acting on coefficient columns.

    Column n holds the expansion of t P_n, so J[n-1, n], J[n, n], J[n+1, n]
    are the only nonzeros.
    """
    J = np.zeros((size, size))
    for n in range(size):
        al, be, ga = jacobi_recurrence(n, a, b)
        J[n, n] = (1 + be) / 2
        if n + 1 < size:
            J[n + 1, n] = al / 2
        if n > 0:
            J[n - 1, n] = ga / 2
    return J


def jacobi_poly(n: int, a: float, b: float) -> Polynomial:
    """P_n^{(a,b)}(2t-1) as a numpy Polynomial in t (monomial coefficients)."""
    if b in (-1, -2):
        # build from the convention formulas, with x = 2t - 1 so 1 + x = 2t
        t = Polynomial([0.0, 1.0])
        if n == 0:
            return Polynomial([1.0])
        if b == -1:
            return 2 * t * ((n + a) / (2 * n)) * jacobi_poly(n - 1, a, 1)
        if n == 1:
            return Polynomial([1.0, a])
        coef = (n + a - 1) * (n + a) / (4 * n * (n - 1))
        return coef * 4 * t * t * jacobi_poly(n - 2, a, 2)
    _check_ab(n, a, b)
    x = Polynomial([-1.0, 2.0])
    p_prev = Polynomial([1.0])
    if n == 0:
        return p_prev
    p = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * (a * a - b * b)
        c3 = (s + 1) * (s + 2) * s
        c4 = 2 * (k + a) * (k + b) * (s + 2)
        p_prev, p = p, ((c2 + c3 * x) * p - c4 * p_prev) / c1
    return p


@dataclass(frozen=True)
class QuadRule:
    """Gauss rule on [0, 1] for the weight (1-t)^lam."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    lam: float = 0.0

    def integrate(self, f) -> complex:
        """Approximate the weighted integral of ``f`` (a callable on arrays)."""
        return np.sum(self.weights * f(self.nodes))


def gauss_jacobi_rule(npts: int, lam: float = 0.0) -> QuadRule:
    """Golub-Welsch rule for int_0^1 f(t) (1-t)^lam dt.

    The symmetric tridiagonal matrix of the orthonormal P^{(lam,0)} family
    on [-1, 1] is diagonalised; nodes and weights are then mapped to [0, 1].
    """
    if npts < 1:
        raise ParameterError(f"need at least one quadrature point, got {npts}")
    if not lam > -1:
        raise ParameterError(f"weight exponent {lam} must exceed -1")
    a, b = float(lam), 0.0
    diag = np.array([jacobi_recurrence(n, a, b)[1] for n in range(npts)])
    off = np.array(
        [math.sqrt(jacobi_recurrence(n - 1, a, b)[0] * jacobi_recurrence(n, a, b)[2]) for n in range(1, npts)]
    )
    x, vecs = eigh_tridiagonal(diag, off)
    mu0 = 2.0 ** (a + 1) / (a + 1)
    w = mu0 * vecs[0, :] ** 2
    order = np.argsort(x)
    nodes = (1 + x[order]) / 2
    weights = w[order] / 2.0 ** (a + 1)
    return QuadRule(nodes=nodes, weights=weights, exactness_degree=2 * npts - 1, lam=float(lam))
