"""Vector bases on the disk built from M: the lift P_m, v^N, n, n^+/-, t.

The lift of f = a(t)(1,1) + t d(t)(1,-1) with mode m and s = sgn(m) is

    P_m f = (1, i s) a(r^2) r^{|m|-1} e^{i(m-s)theta}
          + (1, -i s) d(r^2) r^{|m|+1} e^{i(m+s)theta},

and both harmonics are polynomials when m != 0, so the lift is evaluated
without ever dividing by r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import IndexRangeError
from .geometry import ROT90, check_symmetry_adapted, harmonic, matvec, n_weight, sigma
from .modm import (
    DiagWeightSpec,
    MElement,
    MPoly,
    family_position,
    q_element,
    scalar_weight_modify,
    weight_modify_family,
)
from .univariate import jacobi_eval
from .zernike import FAMILY_ALIASES, FieldEvaluator, ModeIndex, zernike_field


@dataclass(frozen=True)
class EquivWeightSpec:
    """Equivariant weight W(x, y) = alpha(r^2) I + beta(r^2) Sigma(x, y)."""

    alpha: tuple
    beta: tuple

    def matrix(self, x, y) -> np.ndarray:
        x, y = np.asarray(x), np.asarray(y)
        t = x * x + y * y
        al = npoly.polyval(t, np.asarray(self.alpha, dtype=float))
        be = npoly.polyval(t, np.asarray(self.beta, dtype=float))
        eye = np.array([[1.0, 0.0], [0.0, 1.0]]).reshape((2, 2) + (1,) * t.ndim)
        return al * eye + be * sigma(x, y)

    def reduced(self, b: int) -> DiagWeightSpec:
        """The diagonal weight on [0, 1] seen by modes with |m| - 1 = b."""
        return DiagWeightSpec(tuple(self.alpha), tuple(self.beta), b)

    @property
    def degree(self) -> int:
        return max(2 * (len(self.alpha) - 1), 2 * len(self.beta))

    def is_positive(self, samples: int = 64) -> bool:
        return self.reduced(0).is_positive(samples)


IDENTITY_WEIGHT = EquivWeightSpec(alpha=(1.0,), beta=(0.0,))
# N = (1 - r^2/2) I + Sigma/2
N_WEIGHT = EquivWeightSpec(alpha=(1.0, -0.5), beta=(0.5,))


def _sgn(m: int) -> int:
    return 1 if m >= 0 else -1


# ---------------------------------------------------------------- the lift


def pm_apply(m: int, f: MElement, index: ModeIndex | None = None) -> FieldEvaluator:
    """Lift an element of M to a vector field of mode m (m != 0)."""
    if m == 0:
        raise IndexRangeError("the lift is defined for m != 0; mode 0 bases are built directly")
    s = _sgn(m)
    am = abs(m)
    e1 = np.array([1.0, 1j * s]).reshape(2, 1)
    e2 = np.array([1.0, -1j * s]).reshape(2, 1)

    def func(x, y):
        shape = np.broadcast(x, y).shape
        x = np.broadcast_to(x, shape).ravel()
        y = np.broadcast_to(y, shape).ravel()
        a, d = f.split(x * x + y * y)
        out = e1 * (a * harmonic(am - 1, m - s, x, y)) + e2 * (d * harmonic(am + 1, m + s, x, y))
        return out.reshape((2,) + shape)

    return FieldEvaluator(func, "vector", 2 * f.degree + am - 1, m, index)


def pm_inverse(m: int, g, degree: int | None = None, check: bool = True) -> MPoly:
    """Recover f in M from g = P_m f.

    Along the positive x-axis g(x, 0) = x^{|m|-1} S_m f(x^2) with
    S_m = diag(1, i s).  This is a polynomial identity, so it is sampled at
    complex x with x^2 on the unit circle and the coefficients of f are read
    off by a discrete Fourier transform.
    """
    if m == 0:
        raise IndexRangeError("the lift is defined for m != 0")
    if check:
        probe = np.asarray(g(*_probe_points()))
        res = check_symmetry_adapted(g, m, "vector", samples=32)
        if res > 1e-8 * max(1.0, float(np.max(np.abs(probe)))):
            raise ValueError(f"field is not symmetry adapted with mode {m} (residual {res:.2e})")
    if degree is None:
        degree = (g.degree - abs(m) + 1) // 2
    K = 2 * degree + 4
    tk = np.exp(2j * np.pi * np.arange(K) / K)
    xk = np.sqrt(tk)
    vals = np.asarray(g(xk, np.zeros_like(xk)), dtype=complex) * xk ** (1 - abs(m))
    vals[1] *= -1j * _sgn(m)
    coef = np.fft.fft(vals, axis=1) / K
    c = coef[:, : degree + 1]
    if np.max(np.abs(coef[:, degree + 1 :]), initial=0.0) > 1e-9 * max(1.0, float(np.max(np.abs(c)))):
        raise ValueError("field has higher degree than declared")
    if np.max(np.abs(c.imag)) > 1e-9 * max(1.0, float(np.max(np.abs(c)))):
        raise ValueError("field is not the lift of a real element of M")
    return MPoly.from_components(c[0].real, c[1].real, tol=1e-9)


def _probe_points():
    th = np.linspace(0, 2 * np.pi, 7, endpoint=False)
    return 0.7 * np.cos(th), 0.7 * np.sin(th)


# ---------------------------------------------------------------- v^N, n, t


def _v_mode0(j: int, nu: int, radial) -> callable:
    def func(x, y):
        p = radial(x * x + y * y)
        if nu == 1:
            return np.array([x * p, y * p])
        return np.array([-y * p, x * p])

    return func


def v_n_field(m: int, j: int, nu: int) -> FieldEvaluator:
    """v_{mj}^{N,nu}: orthogonal vector polynomials for the weight N."""
    idx = ModeIndex("vN", m, j, nu)
    if nu not in (1, 2):
        raise IndexRangeError(f"nu must be 1 or 2, got {nu}")
    if m == 0:
        if j < 1:
            raise IndexRangeError("v^N_(0,j) requires j >= 1")
        lam = 0 if nu == 1 else 1
        func = _v_mode0(j, nu, lambda t: jacobi_eval(j - 1, lam, 1, 2 * t - 1))
        return FieldEvaluator(func, "vector", 2 * j - 1, 0, idx)
    if nu == 2 and j < 1:
        raise IndexRangeError("v^{N,2} requires j >= 1")
    return pm_apply(m, q_element(abs(m) - 1, nu, j), idx)


def _n_degree(m: int, j: int, nu: int) -> int:
    if m == 0 and nu == 1:
        return 2 * j - 1
    return 2 * j + abs(m) + 1


def n_field(m: int, j: int, nu: int) -> FieldEvaluator:
    """n_{mj}^nu = N v_{mj}^{N,nu}; normal to the unit circle."""
    v = v_n_field(m, j, nu)

    def func(x, y):
        return matvec(n_weight(x, y), v.func(x, y))

    return FieldEvaluator(func, "vector", _n_degree(m, j, nu), m, ModeIndex("n", m, j, nu))


def _pm_range(m: int, j: int, sign: str) -> None:
    if sign not in ("+", "-"):
        raise IndexRangeError(f"sign must be '+' or '-', got {sign!r}")
    if sign == "+" and j < 1:
        raise IndexRangeError("n^+ requires j >= 1")
    if sign == "-" and j < (1 if m == 0 else 0):
        raise IndexRangeError(f"n^- with m={m} requires j >= {1 if m == 0 else 0}")


def n_pm_field(m: int, j: int, sign: str) -> FieldEvaluator:
    """Recombined normal basis n^+ (gradients) and n^- (complement)."""
    _pm_range(m, j, sign)
    idx = ModeIndex("n" + sign, m, j)
    if m == 0:
        base = n_field(0, j, 1 if sign == "+" else 2)
        terms = [(2.0, base)]
    elif j == 0:
        terms = [(2.0, n_field(m, 0, 1))]
    else:
        terms = [(1.0, n_field(m, j, 1)), (1.0 if sign == "+" else -1.0, n_field(m, j, 2))]

    def func(x, y):
        return sum(c * f.func(x, y) for c, f in terms)

    deg = 2 * j + abs(m) + (-1 if sign == "+" else 1)
    return FieldEvaluator(func, "vector", deg, m, idx)


def _rotated(f: FieldEvaluator, idx: ModeIndex) -> FieldEvaluator:
    def func(x, y):
        return matvec(ROT90, f.func(x, y))

    return FieldEvaluator(func, "vector", f.degree, f.m, idx)


def t_field(m: int, j: int, sign: str) -> FieldEvaluator:
    """Tangential basis t^{+/-} = rho(pi/2) n^{+/-}."""
    return _rotated(n_pm_field(m, j, sign), ModeIndex("t" + sign, m, j))


def t_nu_field(m: int, j: int, nu: int) -> FieldEvaluator:
    return _rotated(n_field(m, j, nu), ModeIndex("t", m, j, nu))


def v_n_eval(m, j, nu, x, y):
    return v_n_field(m, j, nu)(x, y)


def n_eval(m, j, nu, x, y):
    return n_field(m, j, nu)(x, y)


def n_pm_eval(m, j, sign, x, y):
    return n_pm_field(m, j, sign)(x, y)


def t_eval(m, j, sign, x, y):
    return t_field(m, j, sign)(x, y)


# ---------------------------------------------------------------- general weights


@lru_cache(maxsize=128)
def _mode0_scalar(alpha: tuple, beta: tuple, sign: int, maxdeg: int) -> np.ndarray:
    mod = npoly.polyadd(np.asarray(alpha, dtype=float), sign * npoly.polymulx(np.asarray(beta, dtype=float)))
    return scalar_weight_modify(mod, 0.0, 1.0, maxdeg)


@lru_cache(maxsize=128)
def _general_family(W: EquivWeightSpec, b: int, maxdeg: int):
    return weight_modify_family(W.reduced(b), maxdeg)


def v_general_field(W: EquivWeightSpec, m: int, j: int, nu: int) -> FieldEvaluator:
    """Vector OPs of mode m for an equivariant weight W, up to scaling.

    Modes m != 0 come from the LU-modified family in M with b = |m| - 1,
    lifted by P_m.  Mode 0 uses scalar OPs in t for the weights
    t (alpha + t beta) (radial direction, nu = 1) and t (alpha - t beta)
    (angular direction, nu = 2).
    """
    idx = ModeIndex("vW", m, j, nu)
    if nu not in (1, 2):
        raise IndexRangeError(f"nu must be 1 or 2, got {nu}")
    if m == 0:
        if j < 1:
            raise IndexRangeError("mode 0 requires j >= 1")
        C = _mode0_scalar(tuple(W.alpha), tuple(W.beta), 1 if nu == 1 else -1, j - 1)
        col = C[:j, j - 1]

        def radial(t):
            return sum(c * jacobi_eval(k, 0, 1, 2 * t - 1) for k, c in enumerate(col))

        return FieldEvaluator(_v_mode0(j, nu, radial), "vector", 2 * j - 1, 0, idx)
    if nu == 2 and j < 1:
        raise IndexRangeError("nu = 2 requires j >= 1")
    fam = _general_family(W, abs(m) - 1, j)
    return pm_apply(m, fam[family_position(j, nu)], idx)


def v_general_eval(W: EquivWeightSpec, m, j, nu, x, y):
    return v_general_field(W, m, j, nu)(x, y)


# ---------------------------------------------------------------- enumerations


def _pm(m: int) -> list[int]:
    return [m, -m] if m else [0]


def enumerate_v_degree(n: int) -> list[tuple[int, int, int]]:
    """(m, j, nu) of the vector OPs of degree n for an equivariant weight."""
    out = []
    for k in range((n + 1) // 2 + 1):
        mm = n + 1 - 2 * k
        for m in _pm(mm):
            if m == 0:
                out.append((0, k, 1))
                out.append((0, k, 2))
            else:
                out.append((m, k, 1))
    for k in range(n // 2 + 1):
        mm = n - 1 - 2 * k
        if mm <= 0:
            continue
        for m in _pm(mm):
            out.append((m, k + 1, 2))
    return out


def enumerate_normal(maxdeg: int) -> list[ModeIndex]:
    """All n^+ and n^- indices of degree <= maxdeg."""
    out = []
    for mm in range(maxdeg + 2):
        for m in _pm(mm):
            for j in range(maxdeg + 1):
                if j >= 1 and 2 * j + mm - 1 <= maxdeg:
                    out.append(ModeIndex("n+", m, j))
                if j >= (1 if m == 0 else 0) and 2 * j + mm + 1 <= maxdeg:
                    out.append(ModeIndex("n-", m, j))
    return out


def basis_field(idx: ModeIndex) -> FieldEvaluator:
    """Evaluator for any supported index."""
    fam = FAMILY_ALIASES.get(idx.family, idx.family)
    if fam in ("vN", "v"):
        return v_n_field(idx.m, idx.j, idx.nu)
    if fam == "n":
        return n_field(idx.m, idx.j, idx.nu)
    if fam == "t":
        return t_nu_field(idx.m, idx.j, idx.nu)
    if fam in ("n+", "n-"):
        return n_pm_field(idx.m, idx.j, fam[1])
    if fam in ("t+", "t-"):
        return t_field(idx.m, idx.j, fam[1])
    return zernike_field(idx)
