"""Independent oracles: disk quadrature, Gram matrices, finite differences,
and a brute-force Gram-Schmidt in M.

None of these use the recurrences under test; they only evaluate fields
pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FactorizationError
from .modm import DiagWeightSpec, MPoly
from .univariate import gauss_jacobi_rule


@dataclass(frozen=True)
class DiskRule:
    """Tensor rule on the unit disk: Gauss-Jacobi in t = r^2, trapezoid in theta."""

    x: np.ndarray
    y: np.ndarray
    w: np.ndarray

    @classmethod
    def for_degree(cls, deg: int, lam: float = 0.0) -> "DiskRule":
        deg = max(int(deg), 0)
        rule = gauss_jacobi_rule(math.ceil((deg + 2) / 2), lam)
        nth = deg + 1
        th = 2 * np.pi * np.arange(nth) / nth
        r = np.sqrt(rule.nodes)
        x = np.outer(r, np.cos(th)).ravel()
        y = np.outer(r, np.sin(th)).ravel()
        # dA = r dr dtheta = (1/2) dt dtheta
        w = np.outer(rule.weights / 2, np.full(nth, 2 * np.pi / nth)).ravel()
        return cls(x, y, w)


def _flat(values: np.ndarray, npts: int) -> np.ndarray:
    """Reshape field values to (components, points)."""
    return np.asarray(values).reshape(-1, npts)


def disk_inner(f, g, lam: float = 0.0, weight=None, deg_hint: int | None = None) -> complex:
    """Inner product of two fields on the unit disk, conjugate-linear in ``f``.

    The scalar weight is (1 - r^2)^lam; ``weight`` may additionally supply a
    matrix weight (an object with ``matrix(x, y)`` and ``degree``) applied to
    vector fields.  Matrix fields use the Frobenius product.
    """
    if deg_hint is None:
        deg_hint = f.degree + g.degree + (weight.degree if weight is not None else 0)
    rule = DiskRule.for_degree(deg_hint, lam)
    n = rule.w.size
    F = _flat(f(rule.x, rule.y), n)
    G = np.asarray(g(rule.x, rule.y))
    if weight is not None:
        G = np.einsum("ijp,jp->ip", weight.matrix(rule.x, rule.y), G.reshape(2, n))
    G = _flat(G, n)
    return complex(np.sum(np.conj(F) * G * rule.w))


@dataclass
class GramReport:
    matrix: np.ndarray
    max_offdiag_rel: float
    min_diag: float
    basis: list
    hermitian_residual: float

    def normalized(self) -> np.ndarray:
        d = np.sqrt(np.abs(np.diag(self.matrix)))
        return self.matrix / np.outer(d, d)


def gram(fields: list, lam: float = 0.0, weight=None, deg_hint: int | None = None) -> GramReport:
    """Gram matrix of a list of FieldEvaluators, evaluated with one shared rule."""
    if not fields:
        raise ValueError("empty basis")
    if deg_hint is None:
        deg_hint = 2 * max(f.degree for f in fields) + (weight.degree if weight is not None else 0)
    rule = DiskRule.for_degree(deg_hint, lam)
    n = rule.w.size
    Phi = np.array([_flat(f(rule.x, rule.y), n) for f in fields])  # (k, c, p)
    if weight is not None:
        WPhi = np.einsum("ijp,kjp->kip", weight.matrix(rule.x, rule.y), Phi)
    else:
        WPhi = Phi
    G = np.einsum("kcp,lcp,p->kl", np.conj(Phi), WPhi, rule.w)
    diag = np.real(np.diag(G))
    scale = np.sqrt(np.outer(np.abs(diag), np.abs(diag)))
    rel = np.abs(G) / np.where(scale > 0, scale, 1.0)
    np.fill_diagonal(rel, 0.0)
    herm = float(np.max(np.abs(G - G.conj().T)) / max(1.0, float(np.max(np.abs(diag)))))
    return GramReport(
        matrix=G,
        max_offdiag_rel=float(rel.max()) if rel.size > 1 else 0.0,
        min_diag=float(diag.min()),
        basis=[getattr(f, "index", None) for f in fields],
        hermitian_residual=herm,
    )


# ---------------------------------------------------------------- finite differences

FD_STEP = 1e-5


def _check_domain(p, h: float, domain: str | None) -> None:
    if domain is None:
        return
    p = [np.asarray(c, dtype=float) for c in p]
    if domain in ("disk", "periodic", "finite"):
        r = np.hypot(p[0], p[1])
        if np.any(r + 2 * h >= 1):
            raise DomainError("finite-difference stencil leaves the unit disk")
    if domain == "finite" and np.any(np.abs(p[2]) + 2 * h >= 1):
        raise DomainError("finite-difference stencil leaves the interval [-1, 1]")


def _partial(f, p, axis: int, h: float):
    plus = [np.asarray(c, dtype=float) for c in p]
    minus = [c.copy() for c in plus]
    plus[axis] = plus[axis] + h
    minus[axis] = minus[axis] - h
    return (np.asarray(f(*plus)) - np.asarray(f(*minus))) / (2 * h)


def fd_apply(op: str, f, p, h: float = FD_STEP, domain: str | None = None):
    """Central-difference grad / curl / div of ``f`` at point(s) ``p``.

    ``p`` is a tuple of coordinate arrays, (x, y) for the planar operators
    (``grad``, ``curl2d``, ``div2d``) and (x, y, z) for ``grad3d``,
    ``curl3d``, ``div3d``.  Vector fields return components on axis 0.
    ``domain`` ("disk", "periodic" or "finite") enables the boundary check.
    """
    _check_domain(p, h, domain)
    D = lambda axis: _partial(f, p, axis, h)  # noqa: E731
    if op == "grad":
        return np.array([D(0), D(1)])
    if op == "curl2d":
        dx, dy = D(0), D(1)
        return dx[1] - dy[0]
    if op == "div2d":
        return D(0)[0] + D(1)[1]
    if op == "grad3d":
        return np.array([D(0), D(1), D(2)])
    if op == "curl3d":
        dx, dy, dz = D(0), D(1), D(2)
        return np.array([dy[2] - dz[1], dz[0] - dx[2], dx[1] - dy[0]])
    if op == "div3d":
        return D(0)[0] + D(1)[1] + D(2)[2]
    raise ValueError(f"unknown operator {op!r}")


# ---------------------------------------------------------------- brute force in M


def m_inner_rule(weight: DiagWeightSpec, maxdeg: int):
    """Quadrature nodes and the two weighted component weights for int f^T V g dt."""
    wdeg = max(len(weight.alpha) - 1, len(weight.beta))
    npts = math.ceil((2 * maxdeg + wdeg + weight.b + 2) / 2) + 1
    rule = gauss_jacobi_rule(npts, 0.0)
    e1, e2 = weight.entries(rule.nodes)
    return rule.nodes, rule.weights * e1, rule.weights * e2


def m_gram(elements: list, weight: DiagWeightSpec) -> np.ndarray:
    """Gram matrix of elements of M under int_0^1 f^T V g dt."""
    maxdeg = max(e.degree for e in elements)
    t, w1, w2 = m_inner_rule(weight, maxdeg)
    vals = np.array([e(t) for e in elements])  # (k, 2, q)
    return np.einsum("kq,lq,q->kl", vals[:, 0], vals[:, 0], w1) + np.einsum("kq,lq,q->kl", vals[:, 1], vals[:, 1], w2)


def brute_orthogonalize(weight: DiagWeightSpec, maxdeg: int) -> list[MPoly]:
    """Monic OPs in M by Gram-Schmidt over the graded monomials.

    Works on weighted samples of the monomials (two passes of modified
    Gram-Schmidt), carrying the triangular change of basis alongside.
    """
    if not weight.is_positive():
        raise FactorizationError("weight is not positive definite on (0, 1)")
    K = 2 * maxdeg + 1
    t, w1, w2 = m_inner_rule(weight, maxdeg)
    basis = [MPoly.basis(i) for i in range(K)]
    vals = np.array([e(t) for e in basis])  # (K, 2, q)
    A = np.concatenate([vals[:, 0] * np.sqrt(w1), vals[:, 1] * np.sqrt(w2)], axis=1).T  # (2q, K)
    Q = A.copy()
    C = np.eye(K)
    for i in range(K):
        ref = np.linalg.norm(A[:, i])
        for _ in range(2):
            for j in range(i):
                nj = Q[:, j] @ Q[:, j]
                r = (Q[:, j] @ Q[:, i]) / nj
                Q[:, i] -= r * Q[:, j]
                C[:, i] -= r * C[:, j]
        if np.linalg.norm(Q[:, i]) <= 1e-13 * ref:
            raise FactorizationError(f"rank collapse at position {i}")
    return [MPoly(np.pad(C[: i + 1, i], (0, i % 2))) for i in range(K)]
