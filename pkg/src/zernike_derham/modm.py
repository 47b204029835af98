"""Vector orthogonal polynomials in the module M of 2-vector polynomials on [0, 1].

An element of M is a real 2-vector polynomial whose constant term has equal
components.  Writing it as

    f(t) = a(t) (1, 1)^T + t d(t) (1, -1)^T

makes membership structural.  :class:`MPoly` stores the monomial
coefficients interleaved as ``[c0, d1, c1, d2, c2, ...]``, matching the
graded order (1,1), (1,-1)t, (1,1)t, (1,-1)t^2, ...  Closed-form families
instead expose ``split(t) -> (a(t), d(t))`` directly, which avoids
cancellation near t = 0 when lifted to the disk.

Basis families are indexed the same way: position 0 is p_0^1, position
2n-1 is p_n^2 and position 2n is p_n^1.  Block n >= 1 of every block
operator is therefore ordered (p_n^2, p_n^1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as npoly

from .errors import FactorizationError, IndexRangeError, TruncationError
from .univariate import jacobi_eval, jacobi_poly, shifted_jacobi_matrix


def family_position(n: int, nu: int) -> int:
    """Position of p_n^nu in the graded ordering."""
    if nu == 1:
        return 2 * n
    if n < 1:
        raise IndexRangeError("the second family starts at degree 1")
    return 2 * n - 1


def position_label(i: int) -> tuple[int, int]:
    """Inverse of :func:`family_position`: returns (n, nu)."""
    return ((i + 1) // 2, 2) if i % 2 else (i // 2, 1)


def block_sizes(nblocks: int) -> list[int]:
    return [1] + [2] * (nblocks - 1)


def block_offsets(nblocks: int) -> np.ndarray:
    return np.concatenate([[0], np.cumsum(block_sizes(nblocks))])


# ---------------------------------------------------------------- elements


class MElement:
    """Something that can be evaluated as an element of M."""

    degree: int

    def split(self, t):
        raise NotImplementedError

    def __call__(self, t):
        t = np.asarray(t)
        a, d = self.split(t)
        return np.array([a + t * d, a - t * d])


class ClosedM(MElement):
    """Element of M given by a closed-form ``split`` function."""

    def __init__(self, split: Callable, degree: int, label: str = ""):
        self._split = split
        self.degree = degree
        self.label = label

    def split(self, t):
        return self._split(np.asarray(t))

    def __repr__(self):
        return f"ClosedM({self.label or '?'}, degree={self.degree})"


class MPoly(MElement):
    """Element of M stored by interleaved monomial coefficients."""

    def __init__(self, coeffs: Sequence[float]):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("interleaved coefficients must have odd length 2*degree+1")
        self.coeffs = c

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def c(self) -> np.ndarray:
        return self.coeffs[0::2]

    @property
    def d(self) -> np.ndarray:
        """d_1, ..., d_degree."""
        return self.coeffs[1::2]

    def split(self, t):
        t = np.asarray(t)
        a = npoly.polyval(t, self.c)
        d = npoly.polyval(t, self.d) if self.degree else np.zeros_like(a)
        return a, d

    def components(self) -> tuple[np.ndarray, np.ndarray]:
        """Monomial coefficients of the two components."""
        dd = np.concatenate([[0.0], self.d])
        return self.c + dd, self.c - dd

    @classmethod
    def from_components(cls, p1, p2, tol: float = 1e-12) -> "MPoly":
        """Build from component coefficient arrays (or numpy Polynomials)."""
        p1 = np.asarray(getattr(p1, "coef", p1), dtype=float)
        p2 = np.asarray(getattr(p2, "coef", p2), dtype=float)
        size = max(p1.size, p2.size)
        p1 = np.pad(p1, (0, size - p1.size))
        p2 = np.pad(p2, (0, size - p2.size))
        scale = max(1.0, float(np.max(np.abs(np.concatenate([p1, p2])))))
        if abs(p1[0] - p2[0]) > tol * scale:
            raise ValueError("constant term must have equal components to lie in M")
        c = (p1 + p2) / 2
        d = (p1 - p2) / 2
        out = np.zeros(2 * size - 1)
        out[0::2] = c
        out[1::2] = d[1:]
        return cls(out).trim()

    @classmethod
    def basis(cls, i: int) -> "MPoly":
        """The i-th monomial element in the graded ordering."""
        out = np.zeros(i + 1 + (i % 2))
        out[i] = 1.0
        return cls(out)

    def trim(self) -> "MPoly":
        c = self.coeffs
        last = np.flatnonzero(c)
        keep = 1 if last.size == 0 else last[-1] + 1
        keep += (keep + 1) % 2  # odd length
        return MPoly(c[:keep])

    def padded(self, degree: int) -> np.ndarray:
        if degree < self.degree:
            raise TruncationError(f"degree {self.degree} does not fit in {degree}")
        return np.pad(self.coeffs, (0, 2 * degree + 1 - self.coeffs.size))

    def __add__(self, other: "MPoly") -> "MPoly":
        deg = max(self.degree, other.degree)
        return MPoly(self.padded(deg) + other.padded(deg))

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-1.0) * other

    def __rmul__(self, s: float) -> "MPoly":
        return MPoly(s * self.coeffs)

    def __mul__(self, s: float) -> "MPoly":
        return MPoly(s * self.coeffs)

    def __repr__(self):
        return f"MPoly({np.array2string(self.coeffs, precision=6)})"


def cosine_distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - |<u, v>| / (|u| |v|), zero exactly when u and v are collinear."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    size = max(u.size, v.size)
    u = np.pad(u, (0, size - u.size))
    v = np.pad(v, (0, size - v.size))
    return float(1 - abs(u @ v) / (np.linalg.norm(u) * np.linalg.norm(v)))


def apply_operator(op: str, poly: MPoly, maxdeg: int | None = None) -> MPoly:
    """Multiply by t (``op="t"``) or by tS with S = diag(1, -1) (``op="tS"``).

    Multiplication by t shifts both coefficient sequences up one degree;
    S exchanges the (1,1) and (1,-1) directions, so tS also swaps c and d.
    """
    deg = poly.degree + 1
    if maxdeg is not None and deg > maxdeg:
        raise TruncationError(f"result of degree {deg} exceeds truncation {maxdeg}")
    out = np.zeros(2 * deg + 1)
    c, d = poly.c, np.concatenate([[0.0], poly.d])
    if op == "t":
        out[2::2] = c
        out[3::2] = d[1:]
    elif op == "tS":
        out[2::2] = d
        out[1::2] = c
    else:
        raise ValueError(f"unknown operator {op!r}")
    return MPoly(out)


# ---------------------------------------------------------------- scaled-identity OPs


def p_ab_eval(a: float, b: float, nu: int, n: int, t):
    """p_n^{(a,b),nu}(t): the Jacobi-weight OPs in M, as an array of shape (2,) + shape(t)."""
    return p_ab_element(a, b, nu, n)(t)


def p_ab_element(a: float, b: float, nu: int, n: int) -> ClosedM:
    if nu == 1:
        if n < 0:
            raise IndexRangeError("degree must be nonnegative")

        def split(t):
            return jacobi_eval(n, a, b, 2 * t - 1), np.zeros_like(t, dtype=float)

    elif nu == 2:
        if n < 1:
            raise IndexRangeError("p^2 requires n >= 1")

        def split(t):
            return np.zeros_like(t, dtype=float), jacobi_eval(n - 1, a, b + 2, 2 * t - 1)

    else:
        raise IndexRangeError(f"nu must be 1 or 2, got {nu}")
    return ClosedM(split, n, f"p_{n}^({a},{b}),{nu}")


def p_ab_coeffs(a: float, b: float, nu: int, n: int) -> MPoly:
    if nu == 1:
        P = jacobi_poly(n, a, b)
        return MPoly.from_components(P, P)
    if n < 1:
        raise IndexRangeError("p^2 requires n >= 1")
    P = Polynomial([0.0, 1.0]) * jacobi_poly(n - 1, a, b + 2)
    return MPoly.from_components(P, -P)


def p_basis_matrix(a: float, b: float, size: int) -> np.ndarray:
    """Columns are interleaved coefficients of the first ``size`` family members."""
    maxdeg = size // 2
    cols = []
    for i in range(size):
        n, nu = position_label(i)
        cols.append(p_ab_coeffs(a, b, nu, n).padded(maxdeg)[:size])
    return np.array(cols).T


def expand_in_p(poly: MPoly, a: float, b: float) -> np.ndarray:
    """Coefficients of ``poly`` in the p^{(a,b)} family (upper triangular solve)."""
    size = 2 * poly.degree + 1
    B = p_basis_matrix(a, b, size)
    return np.linalg.solve(B, poly.coeffs)


# ---------------------------------------------------------------- block operators


@dataclass
class BlockTridiag:
    """Block tridiagonal operator with block profile 1, 2, 2, ...

    ``A[n]`` is the diagonal block (n, n), ``B[n]`` the sub-diagonal block
    (n+1, n) and ``C[n]`` the super-diagonal block (n-1, n), so that
    multiplication by the operator's symbol acts as ``P -> P @ dense``.
    ``C[0]`` is unused and stored as ``None``.
    """

    A: list
    B: list
    C: list

    @property
    def nblocks(self) -> int:
        return len(self.A)

    def to_dense(self) -> np.ndarray:
        N = self.nblocks
        off = block_offsets(N)
        M = np.zeros((off[-1], off[-1]))
        for n in range(N):
            M[off[n] : off[n + 1], off[n] : off[n + 1]] = self.A[n]
            if n + 1 < N:
                M[off[n + 1] : off[n + 2], off[n] : off[n + 1]] = self.B[n]
            if n > 0:
                M[off[n - 1] : off[n], off[n] : off[n + 1]] = self.C[n]
        return M


@dataclass
class BlockBidiag:
    """Block bidiagonal operator; ``off[n]`` sits at (n, n+1) if upper, else (n+1, n)."""

    diag: list
    off: list
    upper: bool

    @property
    def nblocks(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        N = self.nblocks
        o = block_offsets(N)
        M = np.zeros((o[-1], o[-1]))
        for n in range(N):
            M[o[n] : o[n + 1], o[n] : o[n + 1]] = self.diag[n]
            if n + 1 < N:
                if self.upper:
                    M[o[n] : o[n + 1], o[n + 1] : o[n + 2]] = self.off[n]
                else:
                    M[o[n + 1] : o[n + 2], o[n] : o[n + 1]] = self.off[n]
        return M


def jacobi_blocks(b: float, which: str, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    """Blocks (A_n, B_n, C_n) of multiplication by t (T1) or tS (T2) on p^{(0,b)}."""
    if which == "T1":
        if n == 0:
            return np.array([[(b + 1) / (b + 2)]]), np.array([[0.0], [1 / (b + 2)]]), None
        s = 2 * n + b
        A = np.diag([b * b + b * (2 * n + 3) + 2 * (n * n + n + 1), b * (b + 1) + 2 * b * n + 2 * n * (n + 1)])
        A = A / (s * (s + 2))
        B = np.diag([n * (n + b + 2), (n + 1) * (n + b + 1)]) / ((s + 1) * (s + 2))
        if n == 1:
            C = np.array([[0.0, (b + 1) / ((b + 2) * (b + 3))]])
        else:
            C = np.diag([(n - 1) * (n + b + 1), n * (n + b)]) / (s * (s + 1))
        return A, B, C
    if which == "T2":
        if n == 0:
            return np.array([[0.0]]), np.array([[1.0], [0.0]]), None
        s = 2 * n + b
        A = 2 * n * (n + b + 1) / (s * (s + 2)) * np.array([[0.0, 1.0], [1.0, 0.0]])
        B = np.array([[0.0, (n + b + 1) * (n + b + 2)], [n * (n + 1), 0.0]]) / ((s + 1) * (s + 2))
        if n == 1:
            C = np.array([[(b + 1) / (b + 3), 0.0]])
        else:
            C = np.array([[0.0, (n - 1) * n], [(n + b) * (n + b + 1), 0.0]]) / (s * (s + 1))
        return A, B, C
    raise ValueError(f"which must be 'T1' or 'T2', got {which!r}")


def block_jacobi(b: float, which: str, nblocks: int) -> BlockTridiag:
    """Truncated T1 (multiplication by t) or T2 (by tS) on the p^{(0,b)} family."""
    if nblocks < 2:
        raise ValueError("need at least two blocks")
    A, B, C = [], [], []
    for n in range(nblocks):
        a_, b_, c_ = jacobi_blocks(b, which, n)
        A.append(a_)
        B.append(b_)
        C.append(c_)
    return BlockTridiag(A, B, C)


# ---------------------------------------------------------------- q basis


def rq_const(b: int, n: int) -> int:
    """The integer 10n^2 + n(13b+19) + 4(b+1)(b+2)."""
    return 10 * n * n + n * (13 * b + 19) + 4 * (b + 1) * (b + 2)


def _v_split(b: int, n: int, t):
    P1 = jacobi_eval(n, 1, b + 1, 2 * t - 1)
    P0 = jacobi_eval(n, 0, b + 2, 2 * t - 1)
    a = ((b + 1) * (2 - t) * P1 - 2 * t * (n + 1) * P0) / 2
    d = -((b + 1) * P1 + 2 * (n + 1) * P0) / 2
    return a, d


def v_b_eval(b: int, n: int, t):
    """The auxiliary vector polynomial v_n^{(b)}(t) (degree n+1)."""
    return ClosedM(lambda s: _v_split(b, n, s), n + 1)(t)


def _q1_split(b: int, n: int, t):
    K = (2 * n + b + 1) / ((n + 1) * rq_const(b, n))
    E = (2 * n + b + 2) * (2 * n + b + 3)
    P = jacobi_eval(n, 1, b, 2 * t - 1)
    va, vd = _v_split(b, n, t)
    return K * (E * P * (2 - t) / 2 - (n + b + 2) * va), K * (-E * P / 2 - (n + b + 2) * vd)


def _q_split(b: int, nu: int, n: int, t):
    if nu == 1:
        return _q1_split(b, n, t)
    va, vd = _v_split(b, n - 1, t)
    qa, qd = _q1_split(b, n, t)
    return -va / n - qa, -vd / n - qd


def _q_check(b: int, nu: int, n: int) -> None:
    if nu not in (1, 2):
        raise IndexRangeError(f"nu must be 1 or 2, got {nu}")
    if n < (1 if nu == 2 else 0):
        raise IndexRangeError(f"q^{nu} requires n >= {1 if nu == 2 else 0}")
    if b < 0:
        raise IndexRangeError("b must be nonnegative")


def q_element(b: int, nu: int, n: int) -> ClosedM:
    """q_n^{(b),nu}: OPs in M for the weight diag(1, 1-t) t^b."""
    _q_check(b, nu, n)
    return ClosedM(lambda t: _q_split(b, nu, n, t), n, f"q_{n}^({b}),{nu}")


def q_eval(b: int, nu: int, n: int, t):
    return q_element(b, nu, n)(t)


def _v_poly(b: int, n: int) -> tuple[Polynomial, Polynomial]:
    t = Polynomial([0.0, 1.0])
    P1 = jacobi_poly(n, 1, b + 1)
    P0 = jacobi_poly(n, 0, b + 2)
    return (b + 1) * (1 - t) * P1 - 2 * (n + 1) * t * P0, (b + 1) * P1


def _q1_poly(b: int, n: int) -> tuple[Polynomial, Polynomial]:
    t = Polynomial([0.0, 1.0])
    K = (2 * n + b + 1) / ((n + 1) * rq_const(b, n))
    E = (2 * n + b + 2) * (2 * n + b + 3)
    P = jacobi_poly(n, 1, b)
    v1, v2 = _v_poly(b, n)
    return K * (E * (1 - t) * P - (n + b + 2) * v1), K * (E * P - (n + b + 2) * v2)


def q_coeffs(b: int, nu: int, n: int) -> MPoly:
    """Interleaved monomial coefficients of q_n^{(b),nu}; the t^{n+1} terms cancel."""
    _q_check(b, nu, n)
    f1, f2 = _q1_poly(b, n)
    if nu == 2:
        v1, v2 = _v_poly(b, n - 1)
        f1, f2 = -v1 / n - f1, -v2 / n - f2
    c1, c2 = f1.coef[: n + 1], f2.coef[: n + 1]
    return MPoly.from_components(c1, c2, tol=1e-9)


def leading_coeffs(b: int, nu: int, n: int) -> np.ndarray:
    """Coefficient vector of t^n in q_n^{(b),nu}, from its closed form."""
    _q_check(b, nu, n)

    r = rq_const(b, n)
    if nu == 1:
        pre = factorial(2 * n + b + 1) / (factorial(n) * factorial(n + b + 1) * r)
        top = 2 * n * n + (5 * b + 7) * n + 2 * b * (b + 3) + 4
        return pre * np.array([top, 2.0 * (2 * n + b + 1) * (2 * n + b + 2)])
    pre = 2 * factorial(2 * n + b + 2) * (2 * n + b + 1) / (factorial(n) * factorial(n + b + 1) * r)
    return pre * np.array([1.0, -1.0])


# ---------------------------------------------------------------- raising and lowering


def lr_blocks(b: int, nblocks: int) -> tuple[BlockBidiag, BlockBidiag]:
    """Lowering L (lower) and raising R (upper) operators between p^{(0,b)} and q^{(b)}.

    With P and Q the row vectors of both families in graded order,
    P = Q R and diag(1, 1-t) Q = P L.
    """
    Ld, Lo, Rd, Ro = [], [], [], []
    flip = np.array([[-1.0, 1.0], [1.0, -1.0]])
    for n in range(nblocks):
        r = rq_const(b, n)
        if n == 0:
            Rd.append(np.array([[2.0]]))
            Ro.append(2 * (b + 1) / (b + 3) ** 2 * np.array([[b + 2, -1.0]]))
            Ld.append(np.array([[(b + 3) / (4 * (b + 2))]]))
            Lo.append(np.array([[b + 2], [-1.0]]) / (4 * (b + 2)))
            continue
        s = 2 * n + b
        g = (n + b + 1) * (6 * n + 3 * b + 5)
        Rd.append(np.diag([n / (2 * (s + 1) ** 2 * (s + 2)), 2 * (n + b + 1) / (s + 1)]) @ np.array([[r, g], [0.0, 1.0]]))
        Ro.append(
            np.diag([n / (2 * (s + 2) * (s + 3)), 2 * (n + b + 1) / (s + 3) ** 2]) @ flip @ np.diag([n + b + 2, n + 1])
        )
        Ld.append(np.diag([1.0, 1.0 / r]) @ np.array([[1.0, 0.0], [g, (s + 1) * (s + 3)]]))
        Lo.append((s + 1) / r * np.diag([n + b + 2, n + 1]) @ flip)
    return BlockBidiag(Ld, Lo, upper=False), BlockBidiag(Rd, Ro, upper=True)


# ---------------------------------------------------------------- weight modification


@dataclass(frozen=True)
class DiagWeightSpec:
    """Weight diag(alpha + t beta, alpha - t beta) t^b on [0, 1].

    ``alpha`` and ``beta`` are monomial coefficient tuples in t.
    """

    alpha: tuple
    beta: tuple
    b: int = 0

    def entries(self, t):
        t = np.asarray(t, dtype=float)
        al = npoly.polyval(t, np.asarray(self.alpha, dtype=float))
        be = npoly.polyval(t, np.asarray(self.beta, dtype=float))
        tb = t**self.b
        return (al + t * be) * tb, (al - t * be) * tb

    def is_positive(self, samples: int = 64) -> bool:
        t = (np.arange(samples) + 0.5) / samples
        e1, e2 = self.entries(t)
        return bool(np.all(e1 > 0) and np.all(e2 > 0))

    @property
    def degree(self) -> int:
        return max(len(self.alpha) - 1, len(self.beta)) + self.b


def q_weight(b: int) -> DiagWeightSpec:
    """diag(1, 1-t) t^b, the weight of the q^{(b)} family."""
    return DiagWeightSpec(alpha=(1.0, -0.5), beta=(0.5,), b=b)


def lu_nopivot(A: np.ndarray, rtol: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Doolittle LU (unit lower L) without pivoting."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    L = np.eye(n)
    U = A.copy()
    scale = max(1.0, float(np.max(np.abs(A))))
    for k in range(n):
        piv = U[k, k]
        if abs(piv) <= rtol * scale:
            raise FactorizationError(f"zero pivot at position {k}; weight is not positive definite")
        L[k + 1 :, k] = U[k + 1 :, k] / piv
        U[k + 1 :, k:] -= np.outer(L[k + 1 :, k], U[k, k:])
        U[k + 1 :, k] = 0.0
    return L, U


def _matpoly(coeffs, J: np.ndarray) -> np.ndarray:
    out = np.zeros_like(J)
    for c in reversed(list(coeffs)):
        out = out @ J + c * np.eye(J.shape[0])
    return out


@lru_cache(maxsize=256)
def _lu_coeffs(alpha: tuple, beta: tuple, b: int, maxdeg: int) -> np.ndarray:
    nblocks = maxdeg + len(alpha) + len(beta) + 2
    T1 = block_jacobi(b, "T1", nblocks).to_dense()
    T2 = block_jacobi(b, "T2", nblocks).to_dense()
    X = _matpoly(alpha, T1) + T2 @ _matpoly(beta, T1)
    K = 2 * maxdeg + 1
    _, U = lu_nopivot(X[:K, :K])
    Uinv = np.linalg.solve(U, np.eye(K))
    return Uinv / np.diag(Uinv)


def weight_modify_coeffs(weight: DiagWeightSpec, maxdeg: int) -> np.ndarray:
    """Upper-triangular C whose column i expands the i-th modified OP in p^{(0,b)}.

    The operator of multiplication by diag(alpha + t beta, alpha - t beta)
    is alpha(T1) + T2 beta(T1); its LU factors X = L U give the new family
    as P U^{-1}.  Columns are scaled to unit diagonal.
    """
    if not weight.is_positive():
        raise FactorizationError("modified weight is not positive definite on (0, 1)")
    return _lu_coeffs(tuple(map(float, weight.alpha)), tuple(map(float, weight.beta)), int(weight.b), int(maxdeg))


class PCombination(MElement):
    """Finite combination of the p^{(0,b)} family, evaluated through Jacobi recurrences."""

    def __init__(self, coeffs: np.ndarray, b: int):
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.b = b
        self.degree = (self.coeffs.size) // 2

    def split(self, t):
        t = np.asarray(t)
        a = np.zeros(t.shape)
        d = np.zeros(t.shape)
        for i, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            n, nu = position_label(i)
            if nu == 1:
                a = a + c * jacobi_eval(n, 0, self.b, 2 * t - 1)
            else:
                d = d + c * jacobi_eval(n - 1, 0, self.b + 2, 2 * t - 1)
        return a, d

    def to_mpoly(self) -> MPoly:
        K = self.coeffs.size
        return MPoly(p_basis_matrix(0, self.b, K + (K + 1) % 2)[:, :K] @ self.coeffs).trim()


def weight_modify_family(weight: DiagWeightSpec, maxdeg: int) -> list[PCombination]:
    C = weight_modify_coeffs(weight, maxdeg)
    return [PCombination(C[: i + 1, i], weight.b) for i in range(C.shape[0])]


def weight_modify_lu(weight: DiagWeightSpec, maxdeg: int) -> list[MPoly]:
    """OPs in M of degree <= maxdeg for ``weight``, built from p^{(0,b)} by LU.

    The base family p^{(0,b)} is orthogonal for t^b I; ``weight`` supplies the
    diagonal modification together with b.  The returned list follows the
    graded order p_0^1, p_1^2, p_1^1, ... (length 2 maxdeg + 1).
    """
    return [f.to_mpoly() for f in weight_modify_family(weight, maxdeg)]


def scalar_weight_modify(mod, a: float, b: float, maxdeg: int) -> np.ndarray:
    """Scalar analogue: OPs for mod(t) (1-t)^a t^b from P^{(a,b)}(2t-1).

    Returns an upper-triangular matrix whose column n expands the degree-n
    OP in the P^{(a,b)}(2t-1) basis, scaled to unit diagonal.
    """
    mod = tuple(float(c) for c in mod)
    size = maxdeg + len(mod) + 1
    J = shifted_jacobi_matrix(a, b, size)
    X = _matpoly(mod, J)
    K = maxdeg + 1
    _, U = lu_nopivot(X[:K, :K])
    Uinv = np.linalg.solve(U, np.eye(K))
    return Uinv / np.diag(Uinv)
