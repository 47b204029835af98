"""Sparse de Rham recurrences on the disk and on periodic/finite cylinders,
and the sub-complex decompositions they induce.

Every differential operator maps a basis element to a short list of
:class:`ExpansionTerm` objects.  Chains of such maps are assembled into
small matrices whose ranks decide exactness.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .diskbases import basis_field
from .errors import IndexRangeError
from .modm import rq_const
from .univariate import legendre_eval, ultra32_eval
from .zernike import ModeIndex

DOMAINS = ("disk", "periodic", "finite")


@dataclass(frozen=True)
class ExpansionTerm:
    coefficient: complex
    target: object


def _sgn(m: int) -> int:
    return 1 if m >= 0 else -1


def kappa(m: int, j: int) -> complex:
    """Constant in curl n^-_{mj} = -kappa z_{mj} and div t^-_{mj} = kappa z_{mj}."""
    if m == 0:
        if j < 1:
            raise IndexRangeError("kappa_(0,j) requires j >= 1")
        return complex(4 * j)
    if j < 0:
        raise IndexRangeError("j must be nonnegative")
    am = abs(m)
    num = 4 * (2 * j + am) * (2 * j + am + 1) * (2 * j + am + 2)
    return 1j * _sgn(m) * num / rq_const(am - 1, j)


def _z(m: int, j: int) -> ModeIndex:
    return ModeIndex("z", m, j, lam=0.0)


def _check_pm(m: int, j: int, sign: str) -> None:
    if sign == "+" and j < 1:
        raise IndexRangeError("n^+ / t^+ require j >= 1")
    if sign == "-" and j < (1 if m == 0 else 0):
        raise IndexRangeError(f"n^- / t^- with m={m} require j >= {1 if m == 0 else 0}")
    if sign not in ("+", "-"):
        raise IndexRangeError(f"sign must be '+' or '-', got {sign!r}")


def grad_w(m: int, j: int) -> list[ExpansionTerm]:
    if j < 0:
        raise IndexRangeError("j must be nonnegative")
    return [ExpansionTerm(complex(-(j + 1)), ModeIndex("n+", m, j + 1))]


def curl_n(m: int, j: int, sign: str) -> list[ExpansionTerm]:
    _check_pm(m, j, sign)
    if sign == "+":
        return []
    return [ExpansionTerm(-kappa(m, j), _z(m, j))]


def div_t(m: int, j: int, sign: str) -> list[ExpansionTerm]:
    _check_pm(m, j, sign)
    if sign == "+":
        return []
    return [ExpansionTerm(kappa(m, j), _z(m, j))]


def disk_apply(op: str, idx: ModeIndex) -> list[ExpansionTerm]:
    """Apply grad / curl / div symbolically to a disk basis element."""
    fam = idx.family
    if op == "grad" and fam == "w":
        return grad_w(idx.m, idx.j)
    if op == "curl" and fam in ("n+", "n-"):
        return curl_n(idx.m, idx.j, fam[1])
    if op == "div" and fam in ("t+", "t-"):
        return div_t(idx.m, idx.j, fam[1])
    raise IndexRangeError(f"{op} is not defined on {idx.label()}")


# ---------------------------------------------------------------- cylinders


@dataclass(frozen=True)
class CylinderModeIndex:
    """Basis element on a cylinder: a disk field times a z-factor.

    ``slot`` is ``"scalar"``, ``"horizontal"`` ((u, v, 0)) or ``"vertical"``
    ((0, 0, f)).  ``zfactor`` is ``"exp"`` (e^{ikz}), ``"legendre"`` (P_k) or
    ``"c32"`` ((1 - z^2) C_k^{(3/2)}).
    """

    family: str
    m: int
    j: int
    k: int
    slot: str
    zfactor: str

    def label(self) -> str:
        zf = {"exp": f"e^(i{self.k}z)", "legendre": f"P_{self.k}", "c32": f"(1-z^2)C_{self.k}"}[self.zfactor]
        inner = {"scalar": "{f}", "horizontal": "({f};0)", "vertical": "(0;{f})"}[self.slot]
        return f"{zf}{inner.format(f=f'{self.family}[{self.m},{self.j}]')}"

    def disk_index(self) -> ModeIndex:
        if self.family == "z":
            return _z(self.m, self.j)
        return ModeIndex(self.family, self.m, self.j)


_ALLOWED = {
    "periodic": {
        ("w", "scalar"): "exp",
        ("n+", "horizontal"): "exp",
        ("n-", "horizontal"): "exp",
        ("w", "vertical"): "exp",
        ("t+", "horizontal"): "exp",
        ("t-", "horizontal"): "exp",
        ("z", "vertical"): "exp",
        ("z", "scalar"): "exp",
    },
    "finite": {
        ("w", "scalar"): "c32",
        ("n+", "horizontal"): "c32",
        ("n-", "horizontal"): "c32",
        ("w", "vertical"): "legendre",
        ("t+", "horizontal"): "legendre",
        ("t-", "horizontal"): "legendre",
        ("z", "vertical"): "c32",
        ("z", "scalar"): "legendre",
    },
}


def validate_cylinder(domain: str, idx: CylinderModeIndex) -> None:
    if domain not in _ALLOWED:
        raise IndexRangeError(f"unknown cylinder domain {domain!r}")
    want = _ALLOWED[domain].get((idx.family, idx.slot))
    if want is None or want != idx.zfactor:
        raise IndexRangeError(f"{idx.label()} is not a basis element on the {domain} cylinder")
    if domain == "finite" and idx.k < 0:
        raise IndexRangeError("finite-cylinder z-degree must be nonnegative")
    if idx.family in ("n+", "t+") and idx.j < 1:
        raise IndexRangeError("+ families require j >= 1")
    if idx.family in ("n-", "t-") and idx.j < (1 if idx.m == 0 else 0):
        raise IndexRangeError(f"- families with m={idx.m} require j >= {1 if idx.m == 0 else 0}")
    if idx.j < 0:
        raise IndexRangeError("j must be nonnegative")


def _cm(domain, family, m, j, k, slot) -> CylinderModeIndex:
    return CylinderModeIndex(family, m, j, k, slot, _ALLOWED[domain][(family, slot)])


def cyl_grad(domain: str, idx: CylinderModeIndex) -> list[ExpansionTerm]:
    validate_cylinder(domain, idx)
    if (idx.family, idx.slot) != ("w", "scalar"):
        raise IndexRangeError(f"grad is not defined on {idx.label()}")
    m, j, k = idx.m, idx.j, idx.k
    horiz = _cm(domain, "n+", m, j + 1, k, "horizontal")
    if domain == "periodic":
        return [ExpansionTerm(complex(-(j + 1)), horiz), ExpansionTerm(1j * k, _cm(domain, "w", m, j, k, "vertical"))]
    return [
        ExpansionTerm(complex(-(j + 1)), horiz),
        ExpansionTerm(complex(-(k + 1) * (k + 2)), _cm(domain, "w", m, j, k + 1, "vertical")),
    ]


def cyl_curl(domain: str, idx: CylinderModeIndex) -> list[ExpansionTerm]:
    validate_cylinder(domain, idx)
    m, j, k = idx.m, idx.j, idx.k
    if idx.slot == "horizontal" and idx.family in ("n+", "n-"):
        sign = idx.family[1]
        if domain == "periodic":
            out = [ExpansionTerm(1j * k, _cm(domain, "t" + sign, m, j, k, "horizontal"))]
        else:
            out = [ExpansionTerm(complex(-(k + 1) * (k + 2)), _cm(domain, "t" + sign, m, j, k + 1, "horizontal"))]
        if sign == "-":
            out.append(ExpansionTerm(-kappa(m, j), _cm(domain, "z", m, j, k, "vertical")))
        return out
    if (idx.family, idx.slot) == ("w", "vertical"):
        # curl (0; 0; w_{m,j}) = -rho(pi/2) grad w_{m,j} = (j+1) t^+_{m,j+1}
        return [ExpansionTerm(complex(j + 1), _cm(domain, "t+", m, j + 1, k, "horizontal"))]
    raise IndexRangeError(f"curl is not defined on {idx.label()}")


def cyl_div(domain: str, idx: CylinderModeIndex) -> list[ExpansionTerm]:
    validate_cylinder(domain, idx)
    m, j, k = idx.m, idx.j, idx.k
    if idx.slot == "horizontal" and idx.family in ("t+", "t-"):
        if idx.family == "t+":
            return []
        return [ExpansionTerm(kappa(m, j), _cm(domain, "z", m, j, k, "scalar"))]
    if (idx.family, idx.slot) == ("z", "vertical"):
        if domain == "periodic":
            return [ExpansionTerm(1j * k, _cm(domain, "z", m, j, k, "scalar"))]
        return [ExpansionTerm(complex(-(k + 1) * (k + 2)), _cm(domain, "z", m, j, k + 1, "scalar"))]
    raise IndexRangeError(f"div is not defined on {idx.label()}")


def zfactor_eval(zfactor: str, k: int, z):
    z = np.asarray(z)
    if zfactor == "exp":
        return np.exp(1j * k * z)
    if zfactor == "legendre":
        return legendre_eval(k, z)
    if zfactor == "c32":
        return (1 - z * z) * ultra32_eval(k, z)
    raise ValueError(f"unknown z-factor {zfactor!r}")


@dataclass
class CylinderField:
    """Closed-form field on a cylinder; vector values have 3 leading components."""

    func: object
    kind: str
    index: CylinderModeIndex

    def __call__(self, x, y, z):
        return self.func(np.asarray(x), np.asarray(y), np.asarray(z))


def cylinder_field(idx: CylinderModeIndex) -> CylinderField:
    f2 = basis_field(idx.disk_index())

    def func(x, y, z):
        zf = zfactor_eval(idx.zfactor, idx.k, z)
        v = f2(x, y)
        if idx.slot == "scalar":
            return zf * v
        zero = np.zeros(np.broadcast(x, y, z).shape)
        if idx.slot == "horizontal":
            return np.array([zf * v[0], zf * v[1], zero])
        return np.array([zero, zero, zf * v])

    return CylinderField(func, "scalar" if idx.slot == "scalar" else "vector", idx)


# ---------------------------------------------------------------- complexes

STAGES = {"disk": ("H1", "Hcurl", "L2"), "periodic": ("H1", "Hcurl", "Hdiv", "L2"), "finite": ("H1", "Hcurl", "Hdiv", "L2")}
OPS = {"disk": ("grad", "curl"), "periodic": ("grad", "curl", "div"), "finite": ("grad", "curl", "div")}


def apply_op(domain: str, op: str, idx) -> list[ExpansionTerm]:
    if domain == "disk":
        return disk_apply(op, idx)
    return {"grad": cyl_grad, "curl": cyl_curl, "div": cyl_div}[op](domain, idx)


@dataclass
class ComplexChain:
    """A finite sub-complex: bases of consecutive spaces and the maps between them."""

    domain: str
    kind: str
    params: tuple
    spaces: list
    maps: list = field(default_factory=list)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.spaces)

    def labels(self) -> list[list[str]]:
        return [[b.label() for b in s] for s in self.spaces]


def _assemble(domain: str, kind: str, params: tuple, spaces: list) -> ComplexChain:
    ops = OPS[domain]
    maps = []
    for i, op in enumerate(ops):
        src, dst = spaces[i], spaces[i + 1]
        pos = {b: r for r, b in enumerate(dst)}
        D = np.zeros((len(dst), len(src)), dtype=complex)
        for c, b in enumerate(src):
            for term in apply_op(domain, op, b):
                if term.target not in pos:
                    raise ValueError(f"chain not closed: {op} {b.label()} hits {term.target.label()}")
                D[pos[term.target], c] += term.coefficient
        maps.append(D)
    return ComplexChain(domain, kind, params, spaces, maps)


def subcomplex(domain: str, kind: str = "main", m: int = 0, j: int = 0, k: int = 0) -> ComplexChain:
    """One sub-complex of the decomposition.

    Kinds per domain:

    * disk: ``main`` (m, j), ``mode0`` (m != 0), ``constants``.
    * periodic: ``main`` (m, j, k), ``mode0`` (m != 0, k), ``vertical`` (k).
    * finite: ``main`` (m, j, k), ``base`` (m, j), ``mode0`` (m != 0, k),
      ``mode0_base`` (m != 0), ``vertical`` (k), ``constants``.
    """
    if domain == "disk":
        D = lambda f, mm, jj: ModeIndex(f, mm, jj)  # noqa: E731
        if kind == "main":
            spaces = [[D("w", m, j)], [D("n+", m, j + 1), D("n-", m, j + 1)], [_z(m, j + 1)]]
        elif kind == "mode0":
            _need_nonzero(m)
            spaces = [[], [D("n-", m, 0)], [_z(m, 0)]]
        elif kind == "constants":
            spaces = [[], [], [_z(0, 0)]]
        else:
            raise ValueError(f"unknown disk sub-complex {kind!r}")
        return _assemble(domain, kind, (m, j, None), spaces)

    C = lambda f, mm, jj, kk, slot: _cm(domain, f, mm, jj, kk, slot)  # noqa: E731
    if domain == "periodic":
        if kind == "main":
            spaces = [
                [C("w", m, j, k, "scalar")],
                [C("n+", m, j + 1, k, "horizontal"), C("n-", m, j + 1, k, "horizontal"), C("w", m, j, k, "vertical")],
                [C("t+", m, j + 1, k, "horizontal"), C("t-", m, j + 1, k, "horizontal"), C("z", m, j + 1, k, "vertical")],
                [C("z", m, j + 1, k, "scalar")],
            ]
        elif kind == "mode0":
            _need_nonzero(m)
            spaces = [
                [],
                [C("n-", m, 0, k, "horizontal")],
                [C("t-", m, 0, k, "horizontal"), C("z", m, 0, k, "vertical")],
                [C("z", m, 0, k, "scalar")],
            ]
        elif kind == "vertical":
            spaces = [[], [], [C("z", 0, 0, k, "vertical")], [C("z", 0, 0, k, "scalar")]]
        else:
            raise ValueError(f"unknown periodic sub-complex {kind!r}")
        return _assemble(domain, kind, (m, j, k), spaces)

    if domain == "finite":
        if kind == "main":
            spaces = [
                [C("w", m, j, k, "scalar")],
                [C("n+", m, j + 1, k, "horizontal"), C("n-", m, j + 1, k, "horizontal"), C("w", m, j, k + 1, "vertical")],
                [
                    C("t+", m, j + 1, k + 1, "horizontal"),
                    C("t-", m, j + 1, k + 1, "horizontal"),
                    C("z", m, j + 1, k, "vertical"),
                ],
                [C("z", m, j + 1, k + 1, "scalar")],
            ]
        elif kind == "base":
            spaces = [
                [],
                [C("w", m, j, 0, "vertical")],
                [C("t+", m, j + 1, 0, "horizontal"), C("t-", m, j + 1, 0, "horizontal")],
                [C("z", m, j + 1, 0, "scalar")],
            ]
        elif kind == "mode0":
            _need_nonzero(m)
            spaces = [
                [],
                [C("n-", m, 0, k, "horizontal")],
                [C("t-", m, 0, k + 1, "horizontal"), C("z", m, 0, k, "vertical")],
                [C("z", m, 0, k + 1, "scalar")],
            ]
        elif kind == "mode0_base":
            _need_nonzero(m)
            spaces = [[], [], [C("t-", m, 0, 0, "horizontal")], [C("z", m, 0, 0, "scalar")]]
        elif kind == "vertical":
            spaces = [[], [], [C("z", 0, 0, k, "vertical")], [C("z", 0, 0, k + 1, "scalar")]]
        elif kind == "constants":
            spaces = [[], [], [], [C("z", 0, 0, 0, "scalar")]]
        else:
            raise ValueError(f"unknown finite sub-complex {kind!r}")
        return _assemble(domain, kind, (m, j, k), spaces)
    raise ValueError(f"unknown domain {domain!r}")


def _need_nonzero(m: int) -> None:
    if m == 0:
        raise IndexRangeError("this sub-complex exists only for m != 0")


def enumerate_subcomplexes(domain: str, mmax: int = 4, jmax: int = 4, kmax: int = 3) -> list[ComplexChain]:
    """All sub-complexes with |m| <= mmax, j <= jmax and |k| <= kmax (k >= 0 when finite)."""
    ms = range(-mmax, mmax + 1)
    out = []
    if domain == "disk":
        out += [subcomplex("disk", "main", m, j) for m in ms for j in range(jmax + 1)]
        out += [subcomplex("disk", "mode0", m) for m in ms if m]
        out.append(subcomplex("disk", "constants"))
    elif domain == "periodic":
        ks = range(-kmax, kmax + 1)
        out += [subcomplex(domain, "main", m, j, k) for m in ms for j in range(jmax + 1) for k in ks]
        out += [subcomplex(domain, "mode0", m, 0, k) for m in ms if m for k in ks]
        out += [subcomplex(domain, "vertical", 0, 0, k) for k in ks]
    elif domain == "finite":
        ks = range(kmax + 1)
        out += [subcomplex(domain, "main", m, j, k) for m in ms for j in range(jmax + 1) for k in ks]
        out += [subcomplex(domain, "base", m, j) for m in ms for j in range(jmax + 1)]
        out += [subcomplex(domain, "mode0", m, 0, k) for m in ms if m for k in ks]
        out += [subcomplex(domain, "mode0_base", m) for m in ms if m]
        out += [subcomplex(domain, "vertical", 0, 0, k) for k in ks]
        out.append(subcomplex(domain, "constants"))
    else:
        raise ValueError(f"unknown domain {domain!r}")
    return out


@dataclass
class ExactnessReport:
    dims: tuple
    ranks: tuple
    kernel_dims: tuple
    homology: tuple
    composition_zero: bool
    exact: bool


def _rank(D: np.ndarray, tol: float) -> int:
    if D.size == 0:
        return 0
    s = np.linalg.svd(D, compute_uv=False)
    return int(np.sum(s > tol))


def composition_vanishes(chain: ComplexChain) -> bool:
    """Check every two-step composition cancels exactly on the term algebra."""
    ops = OPS[chain.domain]
    for i in range(len(ops) - 1):
        for b in chain.spaces[i]:
            acc: dict = defaultdict(complex)
            for t1 in apply_op(chain.domain, ops[i], b):
                for t2 in apply_op(chain.domain, ops[i + 1], t1.target):
                    acc[t2.target] += t1.coefficient * t2.coefficient
            if any(v != 0 for v in acc.values()):
                return False
    return True


def exactness_check(chain: ComplexChain, tol: float = 1e-9) -> ExactnessReport:
    """Ranks, kernel dimensions and homology at each stage of the chain."""
    dims = chain.dims
    ranks = tuple(_rank(D, tol) for D in chain.maps)
    kernels = tuple(dims[i] - ranks[i] for i in range(len(ranks))) + (dims[-1],)
    homology = tuple(kernels[i] - (ranks[i - 1] if i > 0 else 0) for i in range(len(dims)))
    comp = composition_vanishes(chain)
    for i in range(len(chain.maps) - 1):
        if chain.maps[i + 1].size and chain.maps[i].size:
            comp = comp and bool(np.all(chain.maps[i + 1] @ chain.maps[i] == 0))
    return ExactnessReport(dims, ranks, kernels, homology, comp, all(h == 0 for h in homology))


def betti_numbers(domain: str, chains: list[ComplexChain]) -> tuple[int, ...]:
    """Total homology per stage over a list of sub-complexes."""
    tot = np.zeros(len(STAGES[domain]), dtype=int)
    for c in chains:
        tot += np.array(exactness_check(c).homology)
    return tuple(int(v) for v in tot)
