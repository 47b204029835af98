"""Rotations, the polar frame and the structural 2x2 matrix fields.

Matrix-valued fields are returned with the matrix axes first, so a field
evaluated on arrays of shape ``s`` has shape ``(2, 2) + s``; vector fields
likewise have shape ``(2,) + s``.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import FrameUndefinedError

DEFAULT_SEED = 20260326


def default_seed() -> int:
    """Sampling seed, overridable through the ``DERHAM_SEED`` environment variable."""
    raw = os.environ.get("DERHAM_SEED")
    return int(raw) if raw else DEFAULT_SEED


def rot(phi) -> np.ndarray:
    """Rotation matrix by ``phi``; broadcasts to shape (2, 2) + shape(phi)."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


ROT90 = np.array([[0.0, -1.0], [1.0, 0.0]])


def frame(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors (e_r, e_theta) at (x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x, y)
    if np.any(r == 0):
        raise FrameUndefinedError("e_r and e_theta are undefined at the origin")
    return np.array([x, y]) / r, np.array([-y, x]) / r


def sigma(x, y) -> np.ndarray:
    """Sigma(x, y) = [[x^2 - y^2, 2xy], [2xy, y^2 - x^2]]."""
    x, y = np.asarray(x), np.asarray(y)
    d = x * x - y * y
    o = 2 * x * y
    return np.array([[d, o], [o, -d]])


def n_weight(x, y) -> np.ndarray:
    """N(x, y), which turns vectors normal on the unit circle."""
    x, y = np.asarray(x), np.asarray(y)
    xy = x * y
    return np.array([[1 - y * y, xy], [xy, 1 - x * x]])


def t_weight(x, y) -> np.ndarray:
    """T(x, y), which turns vectors tangential on the unit circle."""
    x, y = np.asarray(x), np.asarray(y)
    xy = x * y
    return np.array([[1 - x * x, -xy], [-xy, 1 - y * y]])


def matvec(A: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Pointwise product of a matrix field (2,2,...) with a vector field (2,...)."""
    return np.einsum("ij...,j...->i...", A, v)


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.einsum("ij...,jk...->ik...", A, B)


def harmonic(a: int, b: int, x, y):
    """r^a e^{i b theta} written as (x + i sgn(b) y)^{|b|} (x^2 + y^2)^{(a - |b|)/2}.

    Requires a - |b| to be a nonnegative even integer so that the result is
    a polynomial in (x, y); sgn(0) is +1.
    """
    ab = abs(b)
    if a < ab or (a - ab) % 2:
        raise ValueError(f"r^{a} e^(i{b}theta) is not a polynomial")
    s = 1 if b >= 0 else -1
    x, y = np.asarray(x), np.asarray(y)
    return (x + 1j * s * y) ** ab * (x * x + y * y) ** ((a - ab) // 2)


def sample_disk(nsamples: int, rng: np.random.Generator, radius: float = 0.95) -> tuple[np.ndarray, np.ndarray]:
    """Uniform random points in the disk of the given radius."""
    r = radius * np.sqrt(rng.random(nsamples))
    th = 2 * np.pi * rng.random(nsamples)
    return r * np.cos(th), r * np.sin(th)


def check_symmetry_adapted(f, m: int, kind: str, samples: int = 200, seed: int | None = None) -> float:
    """Largest deviation of ``f`` from being symmetry adapted with mode ``m``.

    ``kind`` is ``"scalar"``, ``"vector"`` or ``"matrix"``; ``f`` maps arrays
    (x, y) to values laid out as described in the module docstring.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    x, y = sample_disk(samples, rng)
    phi = 2 * np.pi * rng.random(samples)
    R = rot(phi)
    xr, yr = R[0, 0] * x + R[0, 1] * y, R[1, 0] * x + R[1, 1] * y
    phase = np.exp(1j * m * phi)
    f0 = np.asarray(f(x, y))
    f1 = np.asarray(f(xr, yr))
    if kind == "scalar":
        res = np.abs(f1 - f0 * phase)
    elif kind == "vector":
        res = np.linalg.norm(f1 - matvec(R, f0) * phase, axis=0)
    elif kind == "matrix":
        res = np.sqrt(np.sum(np.abs(matmul(f1, R) - matmul(R, f0) * phase) ** 2, axis=(0, 1)))
    else:
        raise ValueError(f"unknown field kind {kind!r}")
    return float(np.max(res)) if res.size else 0.0
