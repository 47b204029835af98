"""Scalar, vector and matrix Zernike families for the weight (1 - r^2)^lam.

Every field is assembled from three pieces: a constant vector or matrix
factor, a Jacobi polynomial in t = r^2 and a polar harmonic r^a e^{ib theta}
written in Cartesian form (see :func:`geometry.harmonic`).  Negative-b Jacobi
conventions vanish to some order at t = 0; that power of t is moved into the
harmonic before evaluation, so nothing singular is ever formed at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import IndexRangeError, ScaledFormRequired
from .geometry import harmonic
from .univariate import jacobi_eval

FAMILY_ALIASES = {
    "scalar_z": "z",
    "weighted_w": "w",
    "mat_Z": "mat_z",
    "mat_Y": "mat_y",
    "normal_n": "n",
    "vec_n": "vN",
}


@dataclass(frozen=True)
class ModeIndex:
    """One basis element: family tag, Fourier mode m, radial index j.

    ``nu`` distinguishes the vector/matrix sub-families; ``lam`` is the
    weight exponent for the Zernike families and ``None`` elsewhere.
    """

    family: str
    m: int
    j: int
    nu: int | None = None
    lam: float | None = None

    def label(self) -> str:
        parts = [f"{self.family}[m={self.m},j={self.j}"]
        if self.nu is not None:
            parts.append(f",nu={self.nu}")
        if self.lam is not None:
            parts.append(f",lam={self.lam:g}")
        return "".join(parts) + "]"


@dataclass
class FieldEvaluator:
    """Closed-form field on the plane.

    ``func(x, y)`` returns an array whose leading axes are the value shape:
    ``()`` for scalars, ``(2,)`` for vectors and ``(2, 2)`` for matrices.
    """

    func: Callable
    kind: str
    degree: int
    m: int
    index: ModeIndex | None = None
    meta: dict = field(default_factory=dict)

    def __call__(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        out = np.asarray(self.func(x, y))
        shape = {"scalar": (), "vector": (2,), "matrix": (2, 2)}[self.kind] + np.broadcast(x, y).shape
        if out.shape != shape:
            out = np.broadcast_to(out, shape)
        return out

    @property
    def value_shape(self) -> tuple[int, ...]:
        return {"scalar": (), "vector": (2,), "matrix": (2, 2)}[self.kind]


def _sgn(m: int) -> int:
    return 1 if m >= 0 else -1


def radial_factor(n: int, lam: float, b: int, t):
    """Return (value, p) with P_n^{(lam,b)}(2t-1) = value * t^p.

    For b in {-1, -2} the conventional polynomials carry an explicit factor
    of t or t^2 which is split off here.
    """
    if b > -1:
        return jacobi_eval(n, lam, b, 2 * t - 1), 0
    one = np.ones_like(t)
    if n == 0:
        return one, 0
    if b == -1:
        return (n + lam) / n * jacobi_eval(n - 1, lam, 1, 2 * t - 1), 1
    if b == -2:
        if n == 1:
            return 1 + lam * t, 0
        coef = (n + lam - 1) * (n + lam) / (n * (n - 1))
        return coef * jacobi_eval(n - 2, lam, 2, 2 * t - 1), 2
    raise ValueError(f"unsupported Jacobi parameter b={b}")


def _polar(a: int, b: int, x, y):
    try:
        return harmonic(a, b, x, y)
    except ValueError as exc:
        raise ScaledFormRequired(str(exc)) from None


def _vec_factor(m: int, nu: int) -> tuple[np.ndarray, int, int]:
    """(constant vector, r-power offset, angular mode) for y_m (nu=1) or Sigma y_m (nu=2)."""
    s = _sgn(m)
    if nu == 1:
        return np.array([1, 1j * s]), -1, m - s
    return np.array([1, -1j * s]), 1, m + s


def _mat_factor(m: int, nu: int) -> tuple[np.ndarray, int, int]:
    """Factors of Y_m, Sigma Y_m, Y_m Sigma and Sigma Y_m Sigma (nu = 1..4)."""
    s = _sgn(m)
    i = 1j * s
    if nu == 1:
        return np.array([[1, i], [i, -1]]), -2, m - 2 * s
    if nu == 2:
        return np.array([[1, i], [-i, 1]]), 0, m
    if nu == 3:
        return np.array([[1, -i], [i, 1]]), 0, m
    return np.array([[1, -i], [-i, -1]]), 2, m + 2 * s


def _structured(m, factor, rpow, ang, n, lam, b, extra_t: int = 0):
    """Evaluator body: factor * P_n^{(lam,b)}(2t-1) * t^extra_t * r^{|m|+rpow} e^{i ang theta}."""
    base = abs(m) + rpow

    def func(x, y):
        t = x * x + y * y
        val, p = radial_factor(n, lam, b, t)
        h = _polar(base + 2 * (p + extra_t), ang, x, y)
        scal = val * h
        return np.multiply.outer(factor, scal)

    # validate once at construction so that range errors surface early
    probe_t = np.array(0.5)
    _, p = radial_factor(n, lam, b, probe_t)
    _polar(base + 2 * (p + extra_t), ang, 0.5, 0.0)
    return func


# ---------------------------------------------------------------- scalars


def y_eval(m: int, x, y):
    """Harmonic polynomial (x + sgn(m) i y)^{|m|}."""
    return harmonic(abs(m), m, x, y)


def z_field(lam: float, m: int, j: int) -> FieldEvaluator:
    """Generalised Zernike polynomial P_j^{(lam,|m|)}(2r^2-1) y_m."""
    if j < 0:
        raise IndexRangeError(f"z requires j >= 0, got {j}")

    def func(x, y):
        return jacobi_eval(j, lam, abs(m), 2 * (x * x + y * y) - 1) * y_eval(m, x, y)

    return FieldEvaluator(func, "scalar", 2 * j + abs(m), m, ModeIndex("z", m, j, lam=lam))


def w_field(m: int, j: int) -> FieldEvaluator:
    """Weighted Zernike polynomial (1 - r^2) z_{mj}^{(1)}."""
    if j < 0:
        raise IndexRangeError(f"w requires j >= 0, got {j}")
    z = z_field(1.0, m, j)

    def func(x, y):
        return (1 - x * x - y * y) * z.func(x, y)

    return FieldEvaluator(func, "scalar", 2 * j + abs(m) + 2, m, ModeIndex("w", m, j))


def z_eval(lam: float, m: int, j: int, x, y):
    return z_field(lam, m, j)(x, y)


def w_eval(m: int, j: int, x, y):
    return w_field(m, j)(x, y)


# ---------------------------------------------------------------- vectors


def vec_y_field(m: int) -> FieldEvaluator:
    """Vector harmonic r^{|m|-1}(e_r + i sgn(m) e_theta) e^{im theta}, m != 0."""
    if m == 0:
        raise ScaledFormRequired("y_0 is singular at the origin; use scaled_vec_y0_eval")
    fac, rp, ang = _vec_factor(m, 1)
    func = _structured(m, fac, rp, ang, 0, 0.0, 0)
    return FieldEvaluator(func, "vector", abs(m) - 1, m, ModeIndex("vec_y", m, 0))


def scaled_vec_y0_field(k: int) -> FieldEvaluator:
    """r^{2k} y_0 for k >= 1; r^2 y_0 = (x - iy, y + ix)."""
    if k < 1:
        raise ScaledFormRequired("y_0 itself is singular at the origin; need k >= 1")
    fac, rp, ang = _vec_factor(0, 1)
    func = _structured(0, fac, rp, ang, 0, 0.0, 0, extra_t=k)
    return FieldEvaluator(func, "vector", 2 * k - 1, 0, ModeIndex("vec_y", 0, k))


def vec_y_eval(m: int, x, y):
    return vec_y_field(m)(x, y)


def scaled_vec_y0_eval(k: int, x, y):
    return scaled_vec_y0_field(k)(x, y)


def _vec_z_range(m: int, j: int, nu: int) -> None:
    if nu not in (1, 2):
        raise IndexRangeError(f"vector Zernike nu must be 1 or 2, got {nu}")
    if nu == 1 and j < (1 if m == 0 else 0):
        raise IndexRangeError(f"z^1_(m={m}) requires j >= {1 if m == 0 else 0}, got {j}")
    if nu == 2 and j < 1:
        raise IndexRangeError(f"z^2 requires j >= 1, got {j}")


def vec_z_field(lam: float, m: int, j: int, nu: int) -> FieldEvaluator:
    """Vector Zernike polynomial z_{mj}^{(lam),nu}."""
    _vec_z_range(m, j, nu)
    fac, rp, ang = _vec_factor(m, nu)
    if nu == 1:
        func = _structured(m, fac, rp, ang, j, lam, abs(m) - 1)
    else:
        func = _structured(m, fac, rp, ang, j - 1, lam, abs(m) + 1)
    return FieldEvaluator(func, "vector", 2 * j + abs(m) - 1, m, ModeIndex("vec_z", m, j, nu, lam))


def vec_z_eval(lam: float, m: int, j: int, nu: int, x, y):
    return vec_z_field(lam, m, j, nu)(x, y)


# ---------------------------------------------------------------- matrices


def mat_y_field(m: int) -> FieldEvaluator:
    """Matrix harmonic Y_m for |m| >= 2 (lower modes are singular at the origin)."""
    if abs(m) < 2:
        raise ScaledFormRequired(f"Y_{m} is singular at the origin; only scaled products are polynomial")
    fac, rp, ang = _mat_factor(m, 1)
    func = _structured(m, fac, rp, ang, 0, 0.0, 0)
    return FieldEvaluator(func, "matrix", abs(m) - 2, m, ModeIndex("mat_y", m, 0, 1))


def mat_y_eval(m: int, x, y):
    return mat_y_field(m)(x, y)


def _mat_z_range(m: int, j: int, nu: int) -> None:
    if nu not in (1, 2, 3, 4):
        raise IndexRangeError(f"matrix Zernike nu must be in 1..4, got {nu}")
    need = {1: {0: 2, 1: 1}.get(abs(m), 0), 2: 1, 3: 1, 4: 2}[nu]
    if j < need:
        raise IndexRangeError(f"Z^{nu}_(m={m}) requires j >= {need}, got {j}")


def mat_z_field(lam: float, m: int, j: int, nu: int) -> FieldEvaluator:
    """Matrix Zernike polynomial Z_{mj}^{(lam),nu}."""
    _mat_z_range(m, j, nu)
    fac, rp, ang = _mat_factor(m, nu)
    n, b = {1: (j, abs(m) - 2), 2: (j - 1, abs(m)), 3: (j - 1, abs(m)), 4: (j - 2, abs(m) + 2)}[nu]
    func = _structured(m, fac, rp, ang, n, lam, b)
    return FieldEvaluator(func, "matrix", 2 * j + abs(m) - 2, m, ModeIndex("mat_z", m, j, nu, lam))


def mat_z_eval(lam: float, m: int, j: int, nu: int, x, y):
    return mat_z_field(lam, m, j, nu)(x, y)


# ---------------------------------------------------------------- enumerations


def _pm(m: int) -> list[int]:
    return [m, -m] if m else [0]


def enumerate_degree(family: str, n: int, lam: float = 0.0) -> list[ModeIndex]:
    """Orthogonal basis indices of exact degree n, in the canonical order.

    ``family`` is ``"z"`` (n+1 elements), ``"vec_z"`` (2(n+1)) or
    ``"mat_z"`` (4(n+1)).
    """
    family = FAMILY_ALIASES.get(family, family)
    if n < 0:
        raise IndexRangeError("degree must be nonnegative")
    out: list[ModeIndex] = []
    if family == "z":
        for k in range(n // 2 + 1):
            for m in _pm(n - 2 * k):
                out.append(ModeIndex("z", m, k, lam=lam))
        return out
    if family == "vec_z":
        for k in range((n + 1) // 2 + 1):
            mm = n + 1 - 2 * k
            for m in _pm(mm):
                out.append(ModeIndex("vec_z", m, k, 1, lam))
        for k in range((n - 1) // 2 + 1 if n >= 1 else 0):
            mm = n - 1 - 2 * k
            for m in _pm(mm):
                out.append(ModeIndex("vec_z", m, k + 1, 2, lam))
        return out
    if family == "mat_z":
        for k in range((n + 2) // 2 + 1):
            mm = n + 2 - 2 * k
            if mm == 0 and k < 2:
                continue
            for m in _pm(mm):
                out.append(ModeIndex("mat_z", m, k, 1, lam))
        for nu in (2, 3):
            for k in range(n // 2 + 1):
                for m in _pm(n - 2 * k):
                    out.append(ModeIndex("mat_z", m, k + 1, nu, lam))
        for k in range((n - 2) // 2 + 1 if n >= 2 else 0):
            for m in _pm(n - 2 - 2 * k):
                out.append(ModeIndex("mat_z", m, k + 2, 4, lam))
        return out
    raise ValueError(f"no degree enumeration for family {family!r}")


def zernike_field(idx: ModeIndex) -> FieldEvaluator:
    """Evaluator for any Zernike-type index (z, w, vec_z, mat_z, vec_y, mat_y)."""
    fam = FAMILY_ALIASES.get(idx.family, idx.family)
    lam = 0.0 if idx.lam is None else idx.lam
    if fam == "z":
        return z_field(lam, idx.m, idx.j)
    if fam == "w":
        return w_field(idx.m, idx.j)
    if fam == "vec_z":
        return vec_z_field(lam, idx.m, idx.j, idx.nu)
    if fam == "mat_z":
        return mat_z_field(lam, idx.m, idx.j, idx.nu)
    if fam == "vec_y":
        return homogeneous_field("vector", idx.m, idx.j, idx.nu or 1)
    if fam == "mat_y":
        return homogeneous_field("matrix", idx.m, idx.j, idx.nu or 1)
    raise ValueError(f"unknown Zernike family {idx.family!r}")


# ---------------------------------------------------------------- homogeneous bases


def homogeneous_field(kind: str, m: int, k: int, nu: int = 1) -> FieldEvaluator:
    """r^{2k} times a (vector or matrix) harmonic of mode m.

    For vectors ``nu = 1`` gives r^{2k} y_m and ``nu = 2`` gives r^{2k} Sigma y_m.
    For matrices ``nu = 1..4`` gives r^{2k} times Y_m, Sigma Y_m, Y_m Sigma,
    Sigma Y_m Sigma.  Combinations singular at the origin raise
    :class:`ScaledFormRequired`.
    """
    if kind == "scalar":
        func = _structured(m, np.array(1.0 + 0j), 0, m, 0, 0.0, 0, extra_t=k)
        return FieldEvaluator(func, "scalar", 2 * k + abs(m), m, ModeIndex("y", m, k))
    if kind == "vector":
        fac, rp, ang = _vec_factor(m, nu)
        func = _structured(m, fac, rp, ang, 0, 0.0, 0, extra_t=k)
        return FieldEvaluator(func, "vector", 2 * k + abs(m) + rp, m, ModeIndex("vec_y", m, k, nu))
    if kind == "matrix":
        fac, rp, ang = _mat_factor(m, nu)
        func = _structured(m, fac, rp, ang, 0, 0.0, 0, extra_t=k)
        return FieldEvaluator(func, "matrix", 2 * k + abs(m) + rp, m, ModeIndex("mat_y", m, k, nu))
    raise ValueError(f"unknown field kind {kind!r}")


def homogeneous_basis(kind: str, n: int) -> list[FieldEvaluator]:
    """Basis of homogeneous polynomials of degree n built from harmonics.

    Sizes are n+1 (scalar), 2(n+1) (vector) and 4(n+1) (matrix).
    """
    out = []
    nus = {"scalar": (1,), "vector": (1, 2), "matrix": (1, 2, 3, 4)}[kind]
    offsets = {"scalar": {1: 0}, "vector": {1: -1, 2: 1}, "matrix": {1: -2, 2: 0, 3: 0, 4: 2}}[kind]
    for nu in nus:
        for mm in range(n + 3, -1, -1):
            rest = n - mm - offsets[nu]
            if rest < 0 or rest % 2:
                continue
            for m in _pm(mm):
                try:
                    out.append(homogeneous_field(kind, m, rest // 2, nu))
                except ScaledFormRequired:
                    continue
    return out
